/** Wire types mirroring the chat service responses, plus the view model. */

export interface WireDocument {
  title: string;
  source_uri: string;
  score: number;
}

export interface WireMedia extends WireDocument {
  media_uri: string | null;
}

export interface ChatAnswer {
  session_id: string;
  text: string;
  documents: WireDocument[];
  images: WireMedia[];
  videos: WireMedia[];
  language: string;
}

export interface HistoryTurn {
  question: string;
  answer: string;
  question_en: string;
  answer_en: string;
  timestamp: number;
}

export type Role = "user" | "assistant";

/**
 * One transcript bubble. Mirrors the wire answer exactly: the server's list
 * order is authoritative and is never re-sorted client-side.
 */
export interface ViewMessage {
  role: Role;
  text: string;
  language?: string;
  documents: WireDocument[];
  images: WireMedia[];
  videos: WireMedia[];
}
