import type { ChatAnswer, HistoryTurn } from "../src/types.js";

/** Minimal in-memory Storage for tests. */
export class MemoryStorage implements Storage {
  private map = new Map<string, string>();

  get length(): number {
    return this.map.size;
  }

  clear(): void {
    this.map.clear();
  }

  getItem(key: string): string | null {
    return this.map.has(key) ? this.map.get(key)! : null;
  }

  key(index: number): string | null {
    return [...this.map.keys()][index] ?? null;
  }

  removeItem(key: string): void {
    this.map.delete(key);
  }

  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function sampleAnswer(overrides: Partial<ChatAnswer> = {}): ChatAnswer {
  return {
    session_id: "s-1",
    text: "Asthma narrows the airways.",
    documents: [
      { title: "overview", source_uri: "https://docs.example/1", score: 0.91 },
      { title: "exercise", source_uri: "https://docs.example/2", score: 0.55 },
    ],
    images: [
      {
        title: "diagram",
        source_uri: "https://pages.example/i1",
        media_uri: "https://media.example/i1.png",
        score: 0.8,
      },
    ],
    videos: [
      {
        title: "breathing",
        source_uri: "https://pages.example/v1",
        media_uri: "https://media.example/v1",
        score: 0.7,
      },
      {
        title: "action plan",
        source_uri: "https://pages.example/v2",
        media_uri: "https://media.example/v2",
        score: 0.6,
      },
    ],
    language: "en",
    ...overrides,
  };
}

export function sampleTurn(i: number): HistoryTurn {
  return {
    question: `question ${i}`,
    answer: `answer ${i}`,
    question_en: `question ${i}`,
    answer_en: `answer ${i}`,
    timestamp: i,
  };
}
