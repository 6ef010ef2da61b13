import { splitSentences } from "./io.js";

/** One predicate with its labeled argument spans, matching the frames schema. */
export interface SrlFrame {
  doc_id: string;
  sentence_index: number;
  predicate: string;
  args: Record<string, string>;
}

// Verbs this backend treats as predicates. The pattern backend stands in for
// a full labeling model: spans are emitted raw, normalization stays in the
// consumer.
const PREDICATE_LEMMAS = new Set([
  "symbolize", "represent", "signify", "mean", "suggest", "evoke", "embody",
  "denote", "indicate", "convey", "recall", "remind", "reflect", "mirror",
  "depict", "betoken", "express", "refer", "mark", "measure",
]);

function lemma(token: string): string {
  const word = token.toLowerCase().replace(/[^a-z]/g, "");
  for (const strip of ["ing", "ies", "ed", "es", "s", "d"]) {
    if (word.length > strip.length + 2 && word.endsWith(strip)) {
      const stem = word.slice(0, -strip.length);
      if (PREDICATE_LEMMAS.has(stem)) return stem;
      if (PREDICATE_LEMMAS.has(stem + "e")) return stem + "e";
      if (strip === "ies" && PREDICATE_LEMMAS.has(stem + "y")) return stem + "y";
    }
  }
  return PREDICATE_LEMMAS.has(word) ? word : "";
}

/** Frames for one document: one frame per predicate token found per sentence. */
export function extractFrames(text: string, docId: string): SrlFrame[] {
  const frames: SrlFrame[] = [];
  splitSentences(text).forEach((sentence, index) => {
    const body = sentence.replace(/[.!?]+$/, "");
    const tokens = body.split(/\s+/).filter((t) => t.length > 0);
    tokens.forEach((token, position) => {
      const predicate = lemma(token);
      if (!predicate) return;
      const args: Record<string, string> = {};
      const before = tokens.slice(0, position).join(" ").trim();
      const after = tokens.slice(position + 1).join(" ").trim();
      if (before) args["ARG0"] = before;
      if (after) args["ARG1"] = after;
      if (Object.keys(args).length === 0) return;
      frames.push({ doc_id: docId, sentence_index: index, predicate, args });
    });
  });
  return frames;
}
