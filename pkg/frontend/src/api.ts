/** Typed client for the chat service; the UI's only network surface. */

import type { ChatAnswer, HistoryTurn } from "./types.js";

export type ApiErrorKind =
  | "bad-request"
  | "unknown-session"
  | "rate-limited"
  | "provider-failure"
  | "server-error"
  | "network";

export class ApiError extends Error {
  readonly kind: ApiErrorKind;
  readonly status: number | null;
  /** Pipeline stage label, present on provider failures (502). */
  readonly stage: string | null;

  constructor(kind: ApiErrorKind, message: string, status: number | null = null, stage: string | null = null) {
    super(message);
    this.name = "ApiError";
    this.kind = kind;
    this.status = status;
    this.stage = stage;
  }
}

function kindOf(status: number): ApiErrorKind {
  if (status === 400) return "bad-request";
  if (status === 404) return "unknown-session";
  if (status === 429) return "rate-limited";
  if (status === 502) return "provider-failure";
  return "server-error";
}

async function raise(response: Response): Promise<never> {
  let message = `request failed (${response.status})`;
  let stage: string | null = null;
  try {
    const body = await response.json();
    const detail = body?.detail;
    if (typeof detail === "string") message = detail;
    else if (detail && typeof detail === "object") {
      stage = typeof detail.stage === "string" ? detail.stage : null;
      message = typeof detail.error === "string" ? detail.error : message;
    }
  } catch {
    // non-JSON error body: keep the status message
  }
  throw new ApiError(kindOf(response.status), message, response.status, stage);
}

export type FetchLike = typeof fetch;

export interface ApiClient {
  sendChat(query: string, sessionId: string | null): Promise<ChatAnswer>;
  fetchHistory(sessionId: string): Promise<HistoryTurn[]>;
}

export function createApiClient(baseUrl = "", fetchImpl: FetchLike = fetch): ApiClient {
  async function post(path: string, payload: unknown): Promise<Response> {
    try {
      return await fetchImpl(`${baseUrl}${path}`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      });
    } catch (cause) {
      throw new ApiError("network", `cannot reach the service: ${String(cause)}`);
    }
  }

  return {
    async sendChat(query: string, sessionId: string | null): Promise<ChatAnswer> {
      const payload: Record<string, string> = { query };
      if (sessionId) payload.session_id = sessionId;
      const response = await post("/api/chat", payload);
      if (!response.ok) await raise(response);
      return (await response.json()) as ChatAnswer;
    },

    async fetchHistory(sessionId: string): Promise<HistoryTurn[]> {
      let response: Response;
      try {
        response = await fetchImpl(`${baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/history`);
      } catch (cause) {
        throw new ApiError("network", `cannot reach the service: ${String(cause)}`);
      }
      if (!response.ok) await raise(response);
      return (await response.json()) as HistoryTurn[];
    },
  };
}
