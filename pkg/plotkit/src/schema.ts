import { z } from "zod";

export const FIGURE_KINDS = [
  "jsa_heatmap",
  "gvm_curve",
  "gv_curve",
  "purity_surface",
  "eigenmode_panel",
] as const;

export const RecipeSchema = z
  .object({
    kind: z.enum(FIGURE_KINDS),
    inputs: z.record(z.string(), z.string()),
    output: z.string(),
    axis_units: z.enum(["nm", "rad_s"]).default("nm"),
    width: z.number().int().positive().max(4000).default(900),
    height: z.number().int().positive().max(4000).default(700),
    title: z.string().default(""),
    filter_band_nm: z.tuple([z.number(), z.number()]).optional(),
  })
  .strict();

export type Recipe = z.infer<typeof RecipeSchema>;

/** Input files required per figure kind (keys of recipe.inputs). */
export const REQUIRED_INPUTS: Record<(typeof FIGURE_KINDS)[number], string[]> = {
  jsa_heatmap: ["grid_csv"],
  gvm_curve: ["scan_csv"],
  gv_curve: ["curve_csv"],
  purity_surface: ["surface_csv"],
  eigenmode_panel: ["signal_modes_csv", "idler_modes_csv", "metadata_json"],
};
