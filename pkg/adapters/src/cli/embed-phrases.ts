import { parseArgs } from "node:util";
import { fileURLToPath } from "node:url";

import { readLines, toJsonl, writeFileAtomic } from "../io.js";
import { lockedModel, writeManifest } from "../manifest.js";
import { DEFAULT_DIMENSION, embedPhrases } from "../embed.js";

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: { out: { type: "string" }, dim: { type: "string" } },
      allowPositionals: true,
    });
  } catch (error) {
    console.error(`embed-phrases: ${(error as Error).message}`);
    return 1;
  }
  const out = parsed.values.out;
  const inputs = parsed.positionals;
  if (!out || inputs.length !== 1) {
    console.error("usage: embed-phrases --out embeddings.jsonl [--dim N] phrase-list-file");
    return 1;
  }
  const dimension = parsed.values.dim ? Number(parsed.values.dim) : DEFAULT_DIMENSION;
  if (!Number.isInteger(dimension) || dimension < 2) {
    console.error(`embed-phrases: --dim must be an integer >= 2, got ${parsed.values.dim}`);
    return 1;
  }
  try {
    const model = lockedModel("embed");
    const records = embedPhrases(readLines(inputs[0]!), dimension);
    writeFileAtomic(out, toJsonl(records));
    writeManifest({
      tool: "embed-phrases",
      model,
      inputs,
      output: out,
      schema_version: 1,
    });
    console.error(`embed-phrases: ${records.length} vectors (dim ${dimension}) -> ${out}`);
    return 0;
  } catch (error) {
    console.error(`embed-phrases: ${(error as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(run(process.argv.slice(2)));
}
