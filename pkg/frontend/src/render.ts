/** DOM builders for transcript bubbles; stateless, server order preserved. */

import type { ApiError } from "./api.js";
import type { ViewMessage, WireDocument, WireMedia } from "./types.js";
import { isRightToLeft } from "./view.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  return node;
}

function renderImageCard(doc: Document, image: WireMedia): HTMLElement {
  // clicking the card opens the image's source page in a new tab
  const card = el(doc, "a", "image-card");
  card.href = image.source_uri;
  card.target = "_blank";
  card.rel = "noopener noreferrer";
  card.title = image.title;
  const img = el(doc, "img");
  img.src = image.media_uri ?? "";
  img.alt = image.title;
  img.loading = "lazy";
  const caption = el(doc, "span", "image-title");
  caption.textContent = image.title;
  card.append(img, caption);
  return card;
}

function renderVideoFrame(doc: Document, video: WireMedia): HTMLElement {
  const wrap = el(doc, "div", "video-frame");
  const frame = el(doc, "iframe");
  frame.src = video.media_uri ?? "";
  frame.title = video.title;
  frame.setAttribute("allowfullscreen", "");
  frame.setAttribute("loading", "lazy");
  wrap.append(frame);
  return wrap;
}

function renderDocumentList(doc: Document, documents: WireDocument[]): HTMLElement {
  const details = el(doc, "details", "sources");
  const summary = el(doc, "summary");
  summary.textContent = `Sources (${documents.length})`;
  details.append(summary);
  const list = el(doc, "ol");
  for (const source of documents) {
    const item = el(doc, "li");
    const link = el(doc, "a");
    link.href = source.source_uri;
    link.target = "_blank";
    link.rel = "noopener noreferrer";
    link.textContent = source.title;
    const score = el(doc, "span", "score");
    score.textContent = source.score.toFixed(3);
    item.append(link, score);
    list.append(item);
  }
  details.append(list);
  return details;
}

export function renderMessage(doc: Document, message: ViewMessage): HTMLElement {
  const bubble = el(doc, "div", `message ${message.role}`);
  // direction follows the server's detected language; history bubbles have
  // no language tag and let the browser infer
  bubble.dir = message.language ? (isRightToLeft(message.language) ? "rtl" : "ltr") : "auto";

  const text = el(doc, "p", "text");
  text.textContent = message.text;
  bubble.append(text);

  if (message.images.length > 0) {
    const gallery = el(doc, "div", "images");
    for (const image of message.images) gallery.append(renderImageCard(doc, image));
    bubble.append(gallery);
  }
  if (message.videos.length > 0) {
    const reel = el(doc, "div", "videos");
    for (const video of message.videos) reel.append(renderVideoFrame(doc, video));
    bubble.append(reel);
  }
  if (message.documents.length > 0) {
    bubble.append(renderDocumentList(doc, message.documents));
  }
  return bubble;
}

const ERROR_TEXT: Record<string, string> = {
  "bad-request": "The service rejected the request.",
  "unknown-session": "This conversation is no longer on the server.",
  "rate-limited": "Too many requests; wait a moment and try again.",
  "provider-failure": "A backing provider failed.",
  "server-error": "The service reported an error.",
  network: "Cannot reach the service.",
};

/** A distinguishable bubble per error class; never fabricates an answer. */
export function renderError(doc: Document, error: ApiError): HTMLElement {
  const bubble = el(doc, "div", `message error error-${error.kind}`);
  const text = el(doc, "p", "text");
  const stage = error.stage ? ` [stage: ${error.stage}]` : "";
  text.textContent = `${ERROR_TEXT[error.kind] ?? "Request failed."}${stage} (${error.message})`;
  bubble.append(text);
  return bubble;
}
