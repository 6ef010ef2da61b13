import { parseArgs } from "node:util";
import { fileURLToPath } from "node:url";

import { docIdFor, readText, toJsonl, writeFileAtomic } from "../io.js";
import { lockedModel, writeManifest } from "../manifest.js";
import { extractFrames, type SrlFrame } from "../srl.js";

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: { out: { type: "string" } },
      allowPositionals: true,
    });
  } catch (error) {
    console.error(`srl-extract: ${(error as Error).message}`);
    return 1;
  }
  const out = parsed.values.out;
  const inputs = parsed.positionals;
  if (!out || inputs.length === 0) {
    console.error("usage: srl-extract --out frames.jsonl text-file [text-file ...]");
    return 1;
  }
  try {
    const model = lockedModel("srl");
    const frames: SrlFrame[] = [];
    for (const path of inputs) {
      frames.push(...extractFrames(readText(path), docIdFor(path)));
    }
    writeFileAtomic(out, toJsonl(frames));
    writeManifest({
      tool: "srl-extract",
      model,
      inputs,
      output: out,
      schema_version: 1,
    });
    console.error(`srl-extract: ${frames.length} frames from ${inputs.length} file(s) -> ${out}`);
    return 0;
  } catch (error) {
    console.error(`srl-extract: ${(error as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(run(process.argv.slice(2)));
}
