import { readFileSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

/** Record of one adapter run, written beside its output file. */
export interface AdapterManifest {
  tool: string;
  model: string;
  inputs: string[];
  output: string;
  schema_version: number;
}

const LOCK_PATH = join(dirname(fileURLToPath(import.meta.url)), "..", "models.lock.json");

/** Pinned model identifier for a tool, from models.lock.json. */
export function lockedModel(tool: "srl" | "ner" | "embed"): string {
  const lock = JSON.parse(readFileSync(LOCK_PATH, "utf-8")) as Record<string, string>;
  const model = lock[tool];
  if (!model) {
    throw new Error(`models.lock.json has no entry for tool '${tool}'`);
  }
  return model;
}

export function manifestPath(outputPath: string): string {
  return `${outputPath}.manifest.json`;
}

export function writeManifest(manifest: AdapterManifest): void {
  writeFileSync(
    manifestPath(manifest.output),
    JSON.stringify(manifest, null, 2) + "\n",
    "utf-8",
  );
}
