import { splitSentences } from "./io.js";

/** One entity mention, matching the NER schema. */
export interface NerAnnotation {
  doc_id: string;
  term: string;
  label: string;
}

// The consumer accepts exactly these labels.
export const CLOSED_LABEL_SET = new Set(["PERSON", "ORG", "GPE", "LOC", "OTHER"]);

const LABEL_ALIASES: Record<string, string> = {
  PER: "PERSON",
  PERSON: "PERSON",
  ORG: "ORG",
  ORGANIZATION: "ORG",
  ORGANISATION: "ORG",
  GPE: "GPE",
  LOC: "LOC",
  LOCATION: "LOC",
};

/** Map a raw model label onto the closed set; anything unknown becomes OTHER. */
export function mapLabel(raw: string): string {
  const upper = raw.trim().toUpperCase();
  return LABEL_ALIASES[upper] ?? (CLOSED_LABEL_SET.has(upper) ? upper : "OTHER");
}

// Gazetteers for the built-in backend; a live recognizer would replace these.
const PERSONS = [
  "Pieter Claesz", "Adriaen van Utrecht", "Jacques de Gheyn", "Rembrandt",
  "Hendrick Andriessen", "Jan Davidsz. de Heem", "Herman van Steenwijk",
  "Harmen Steenwijck", "David Bailly", "Adam Bernaert",
];
const GPES = [
  "the Netherlands", "Netherlands", "Holland", "Spain", "Leiden", "Haarlem",
  "Delft", "Amsterdam", "Antwerp", "Utrecht",
];
const ORGS = ["the Getty", "Getty", "Rijksmuseum", "Mauritshuis", "Louvre"];
const LOCS = ["Europe", "the Low Countries"];

const GAZETTEER: Array<[string, string]> = [
  ...PERSONS.map((t): [string, string] => [t, "PERSON"]),
  ...GPES.map((t): [string, string] => [t, "GPE"]),
  ...ORGS.map((t): [string, string] => [t, "ORG"]),
  ...LOCS.map((t): [string, string] => [t, "LOC"]),
].sort((a, b) => b[0].length - a[0].length);

function isLetter(ch: string | undefined): boolean {
  return ch !== undefined && /[A-Za-z]/.test(ch);
}

function indexOfWord(haystack: string, needle: string): number {
  let from = 0;
  while (from <= haystack.length - needle.length) {
    const index = haystack.indexOf(needle, from);
    if (index < 0) return -1;
    const beforeOk = index === 0 || !isLetter(haystack[index - 1]);
    const afterOk = !isLetter(haystack[index + needle.length]);
    if (beforeOk && afterOk) return index;
    from = index + 1;
  }
  return -1;
}

/** Entity mentions for one document via longest-match gazetteer lookup. */
export function tagEntities(text: string, docId: string): NerAnnotation[] {
  const annotations: NerAnnotation[] = [];
  for (const sentence of splitSentences(text)) {
    let remaining = sentence;
    while (remaining.length > 0) {
      let hit: [string, string] | undefined;
      let hitIndex = -1;
      for (const [term, label] of GAZETTEER) {
        const index = indexOfWord(remaining, term);
        if (index >= 0 && (hitIndex < 0 || index < hitIndex)) {
          hit = [term, label];
          hitIndex = index;
        }
      }
      if (!hit) break;
      annotations.push({ doc_id: docId, term: hit[0], label: mapLabel(hit[1]) });
      remaining = remaining.slice(hitIndex + hit[0].length);
    }
  }
  return annotations;
}
