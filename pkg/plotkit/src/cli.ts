#!/usr/bin/env node
import { readFileSync } from "node:fs";

import { SchemaMismatch } from "./csv.js";
import { render } from "./render.js";

export function main(argv: string[]): number {
  if (argv.length !== 1) {
    console.error("usage: plotkit <recipe.json>");
    return 2;
  }
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(argv[0], "utf8"));
  } catch (err) {
    console.error(`error reading recipe: ${(err as Error).message}`);
    return 2;
  }
  try {
    const result = render(raw);
    console.log(result.output);
    return 0;
  } catch (err) {
    if (err instanceof SchemaMismatch) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") || process.argv[1]?.endsWith("plotkit");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
