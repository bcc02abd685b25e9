import { existsSync, writeFileSync } from "node:fs";

import { SchemaMismatch } from "./csv.js";
import { renderGvCurve, renderGvmCurve } from "./figures/curves.js";
import { renderEigenmodePanel } from "./figures/eigenmodePanel.js";
import { renderJsaHeatmap } from "./figures/jsaHeatmap.js";
import { renderPuritySurface } from "./figures/puritySurface.js";
import { Recipe, RecipeSchema, REQUIRED_INPUTS } from "./schema.js";

export interface RenderResult {
  output: string;
  kind: Recipe["kind"];
  checks: Record<string, unknown>;
}

export function validateRecipe(raw: unknown): Recipe {
  const parsed = RecipeSchema.safeParse(raw);
  if (!parsed.success) {
    throw new SchemaMismatch(`invalid recipe: ${parsed.error.issues.map((i) => `${i.path.join(".")}: ${i.message}`).join("; ")}`);
  }
  const recipe = parsed.data;
  for (const key of REQUIRED_INPUTS[recipe.kind]) {
    const path = recipe.inputs[key];
    if (!path) {
      throw new SchemaMismatch(`recipe for ${recipe.kind} needs inputs.${key}`);
    }
    if (!existsSync(path)) {
      throw new SchemaMismatch(`inputs.${key}: file not found: ${path}`);
    }
  }
  return recipe;
}

/** Render one figure; writes the image plus a sidecar .meta.json with the
 * figure checks (deterministic for fixed inputs). */
export function render(raw: unknown): RenderResult {
  const recipe = validateRecipe(raw);
  let checks: Record<string, unknown>;
  switch (recipe.kind) {
    case "jsa_heatmap":
      checks = { ...renderJsaHeatmap(recipe) };
      break;
    case "gvm_curve":
      checks = { ...renderGvmCurve(recipe) };
      break;
    case "gv_curve":
      checks = { ...renderGvCurve(recipe) };
      break;
    case "purity_surface":
      checks = { ...renderPuritySurface(recipe) };
      break;
    case "eigenmode_panel":
      checks = { ...renderEigenmodePanel(recipe) };
      break;
  }
  const result: RenderResult = { output: recipe.output, kind: recipe.kind, checks };
  writeFileSync(`${recipe.output}.meta.json`, JSON.stringify(result, null, 2) + "\n");
  return result;
}
