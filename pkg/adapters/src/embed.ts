/** One embedding line, matching the embeddings schema. */
export interface EmbeddingRecord {
  text: string;
  vector: number[];
}

export const DEFAULT_DIMENSION = 64;

// FNV-1a, 32 bit; stable across platforms so outputs are reproducible.
function fnv1a(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

function features(phrase: string): string[] {
  const lowered = phrase.toLowerCase();
  const padded = ` ${lowered} `;
  const grams: string[] = [];
  for (let i = 0; i + 3 <= padded.length; i++) {
    grams.push(padded.slice(i, i + 3));
  }
  for (const token of lowered.split(/\s+/)) {
    if (token) grams.push(`tok:${token}`);
  }
  grams.push(`all:${lowered}`);
  return grams;
}

/**
 * Deterministic feature-hashing embedding: character trigrams and whole
 * tokens scattered into a fixed-dimension vector, L2-normalized. Identical
 * phrases get identical vectors, so self-cosine is exactly 1.
 */
export function embedPhrase(phrase: string, dimension: number = DEFAULT_DIMENSION): number[] {
  const vector = new Array<number>(dimension).fill(0);
  for (const feature of features(phrase)) {
    const hash = fnv1a(feature);
    const index = hash % dimension;
    const sign = (hash >>> 16) % 2 === 0 ? 1 : -1;
    vector[index] += sign;
  }
  let norm = Math.sqrt(vector.reduce((acc, x) => acc + x * x, 0));
  if (norm === 0) {
    // opposing signs can cancel in tiny phrases; pin a deterministic basis
    vector[fnv1a(`rescue:${phrase.toLowerCase()}`) % dimension] = 1;
    norm = 1;
  }
  return vector.map((x) => x / norm);
}

/** Dedup key mirroring the consumer's phrase normalization. */
export function phraseKey(phrase: string): string {
  let text = phrase.toLowerCase().split(/\s+/).filter(Boolean).join(" ");
  let start = 0;
  let end = text.length;
  while (start < end && !/[a-z0-9]/i.test(text[start]!)) start++;
  while (end > start && !/[a-z0-9]/i.test(text[end - 1]!)) end--;
  return text.slice(start, end);
}

/** One record per unique phrase, in first-seen order. */
export function embedPhrases(phrases: string[], dimension: number = DEFAULT_DIMENSION): EmbeddingRecord[] {
  const seen = new Set<string>();
  const records: EmbeddingRecord[] = [];
  for (const phrase of phrases) {
    const key = phraseKey(phrase);
    if (!key || seen.has(key)) continue;
    seen.add(key);
    records.push({ text: phrase, vector: embedPhrase(phrase, dimension) });
  }
  return records;
}

export function cosine(u: number[], v: number[]): number {
  let dot = 0;
  let nu = 0;
  let nv = 0;
  for (let i = 0; i < u.length; i++) {
    dot += u[i]! * v[i]!;
    nu += u[i]! * u[i]!;
    nv += v[i]! * v[i]!;
  }
  return dot / Math.sqrt(nu * nv);
}
