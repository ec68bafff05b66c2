/** Application wiring: transcript, input form, session bootstrap. */

import { ApiError, createApiClient, type ApiClient, type FetchLike } from "./api.js";
import { renderError, renderMessage } from "./render.js";
import { clearSessionId, loadSessionId, storeSessionId } from "./session.js";
import { answerToMessage, turnToMessages, userMessage } from "./view.js";

export interface AppOptions {
  baseUrl?: string;
  storage?: Storage;
  fetchImpl?: FetchLike;
}

export interface App {
  root: HTMLElement;
  transcript: HTMLElement;
  input: HTMLInputElement;
  form: HTMLFormElement;
  /** Resolves when the history bootstrap has finished. */
  ready: Promise<void>;
  send(text: string): Promise<void>;
  sessionId(): string | null;
}

export function createApp(root: HTMLElement, options: AppOptions = {}): App {
  const doc = root.ownerDocument;
  const storage = options.storage ?? doc.defaultView!.localStorage;
  const api: ApiClient = createApiClient(options.baseUrl ?? "", options.fetchImpl ?? fetch);

  root.innerHTML = "";
  const transcript = doc.createElement("div");
  transcript.className = "transcript";
  const form = doc.createElement("form");
  form.className = "composer";
  const input = doc.createElement("input");
  input.type = "text";
  input.placeholder = "Ask a question";
  input.autocomplete = "off";
  const button = doc.createElement("button");
  button.type = "submit";
  button.textContent = "Send";
  form.append(input, button);
  root.append(transcript, form);

  let inFlight = false;

  function push(node: HTMLElement): void {
    transcript.append(node);
    transcript.scrollTop = transcript.scrollHeight;
  }

  function setBusy(busy: boolean): void {
    inFlight = busy;
    input.disabled = busy;
    button.disabled = busy;
  }

  async function bootstrap(): Promise<void> {
    const stored = loadSessionId(storage);
    if (stored) {
      try {
        const turns = await api.fetchHistory(stored);
        for (const turn of turns) {
          const [question, answer] = turnToMessages(turn);
          push(renderMessage(doc, question));
          push(renderMessage(doc, answer));
        }
      } catch (error) {
        if (error instanceof ApiError && error.kind === "unknown-session") {
          clearSessionId(storage); // stale id: start a fresh conversation
        } else if (error instanceof ApiError) {
          push(renderError(doc, error));
        } else {
          throw error;
        }
      }
    }
    input.focus();
  }

  async function send(text: string): Promise<void> {
    const query = text.trim();
    if (!query || inFlight) return;
    setBusy(true);
    push(renderMessage(doc, userMessage(query)));
    try {
      const answer = await api.sendChat(query, loadSessionId(storage));
      storeSessionId(answer.session_id, storage);
      push(renderMessage(doc, answerToMessage(answer)));
    } catch (error) {
      if (error instanceof ApiError) {
        if (error.kind === "unknown-session") clearSessionId(storage);
        push(renderError(doc, error));
      } else {
        throw error;
      }
    } finally {
      setBusy(false);
      input.focus();
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = input.value;
    input.value = "";
    void send(text);
  });

  return {
    root,
    transcript,
    input,
    form,
    ready: bootstrap(),
    send,
    sessionId: () => loadSessionId(storage),
  };
}
