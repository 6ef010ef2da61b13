import { parseArgs } from "node:util";
import { fileURLToPath } from "node:url";

import { docIdFor, readText, toJsonl, writeFileAtomic } from "../io.js";
import { lockedModel, writeManifest } from "../manifest.js";
import { tagEntities, type NerAnnotation } from "../ner.js";

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: { out: { type: "string" } },
      allowPositionals: true,
    });
  } catch (error) {
    console.error(`ner-tag: ${(error as Error).message}`);
    return 1;
  }
  const out = parsed.values.out;
  const inputs = parsed.positionals;
  if (!out || inputs.length === 0) {
    console.error("usage: ner-tag --out ner.jsonl text-file [text-file ...]");
    return 1;
  }
  try {
    const model = lockedModel("ner");
    const annotations: NerAnnotation[] = [];
    for (const path of inputs) {
      annotations.push(...tagEntities(readText(path), docIdFor(path)));
    }
    writeFileAtomic(out, toJsonl(annotations));
    writeManifest({
      tool: "ner-tag",
      model,
      inputs,
      output: out,
      schema_version: 1,
    });
    console.error(
      `ner-tag: ${annotations.length} mentions from ${inputs.length} file(s) -> ${out}`,
    );
    return 0;
  } catch (error) {
    console.error(`ner-tag: ${(error as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(run(process.argv.slice(2)));
}
