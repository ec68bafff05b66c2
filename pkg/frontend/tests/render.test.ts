import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { renderError, renderMessage } from "../src/render.js";
import { answerToMessage } from "../src/view.js";
import { sampleAnswer } from "./helpers.js";

describe("renderMessage", () => {
  it("renders answer text with media in server order", () => {
    const bubble = renderMessage(document, answerToMessage(sampleAnswer()));
    expect(bubble.querySelector(".text")?.textContent).toBe("Asthma narrows the airways.");

    const frames = bubble.querySelectorAll("iframe");
    expect(frames).toHaveLength(2);
    expect(frames[0]?.title).toBe("breathing");
    expect(frames[1]?.title).toBe("action plan");
    expect(frames[0]?.getAttribute("src")).toBe("https://media.example/v1");
  });

    it("image cards link to the source page in a new tab", () => {
    const bubble = renderMessage(document, answerToMessage(sampleAnswer()));
    const card = bubble.querySelector<HTMLAnchorElement>("a.image-card");
    expect(card?.getAttribute("href")).toBe("https://pages.example/i1");
    expect(card?.target).toBe("_blank");
    expect(card?.querySelector("img")?.getAttribute("src")).toBe(
      "https://media.example/i1.png",
    );
  });

  it("renders a collapsible source list", () => {
    const bubble = renderMessage(document, answerToMessage(sampleAnswer()));
    const sources = bubble.querySelector("details.sources");
    expect(sources?.querySelector("summary")?.textContent).toBe("Sources (2)");
    const links = sources?.querySelectorAll("a") ?? [];
    expect([...links].map((a) => a.getAttribute("href"))).toEqual([
      "https://docs.example/1",
      "https://docs.example/2",
    ]);
  });

  it("applies right-to-left direction for arabic answers", () => {
    const arabic = answerToMessage(sampleAnswer({ language: "ar", text: "الربو مرض مزمن" }));
    expect(renderMessage(document, arabic).dir).toBe("rtl");
    const english = answerToMessage(sampleAnswer());
    expect(renderMessage(document, english).dir).toBe("ltr");
  });

  it("omits media sections when lists are empty", () => {
    const bubble = renderMessage(
      document,
      answerToMessage(sampleAnswer({ documents: [], images: [], videos: [] })),
    );
    expect(bubble.querySelector(".images")).toBeNull();
    expect(bubble.querySelector(".videos")).toBeNull();
    expect(bubble.querySelector(".sources")).toBeNull();
  });
});

describe("renderError", () => {
  it("distinguishes error classes and carries the stage label", () => {
    const provider = renderError(
      document,
      new ApiError("provider-failure", "llm down", 502, "GENERATE"),
    );
    expect(provider.className).toContain("error-provider-failure");
    expect(provider.textContent).toContain("GENERATE");
    expect(provider.textContent).toContain("llm down");

    const limited = renderError(document, new ApiError("rate-limited", "slow down", 429));
    expect(limited.className).toContain("error-rate-limited");
    expect(limited.textContent).not.toContain("stage");
  });
});
