/** Pure mapping from wire payloads to transcript bubbles. */

import type { ChatAnswer, HistoryTurn, ViewMessage } from "./types.js";

export function isRightToLeft(language: string | undefined): boolean {
  return language === "ar";
}

/** The live answer becomes one assistant bubble, media in server order. */
export function answerToMessage(answer: ChatAnswer): ViewMessage {
  return {
    role: "assistant",
    text: answer.text,
    language: answer.language,
    documents: answer.documents,
    images: answer.images,
    videos: answer.videos,
  };
}

export function userMessage(text: string): ViewMessage {
  return { role: "user", text, documents: [], images: [], videos: [] };
}

/**
 * A persisted turn restores as a question/answer bubble pair. History turns
 * carry no media or language tag, so restored bubbles are text-only.
 */
export function turnToMessages(turn: HistoryTurn): [ViewMessage, ViewMessage] {
  return [
    userMessage(turn.question),
    { role: "assistant", text: turn.answer, documents: [], images: [], videos: [] },
  ];
}
