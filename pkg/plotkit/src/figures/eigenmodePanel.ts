import { readFileSync, writeFileSync } from "node:fs";

import { column, readCsv, SchemaMismatch } from "../csv.js";
import { axis, fmt, linearScale, polyline, svgDocument } from "../svg.js";
import type { Recipe } from "../schema.js";

const C_LIGHT = 299792458;

function hermite(order: number, x: number): number {
  // physicists' Hermite polynomials by recurrence
  let h0 = 1;
  let h1 = 2 * x;
  if (order === 0) return h0;
  for (let k = 1; k < order; k++) {
    const h2 = 2 * x * h1 - 2 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

function normalizedPeak(values: number[]): number[] {
  const peak = Math.max(...values.map((v) => Math.abs(v))) || 1;
  return values.map((v) => v / peak);
}

/** First Schmidt modes with the pump shape overlaid on the signal panel and
 * an optional filter band shaded on the idler panel. */
export function renderEigenmodePanel(recipe: Recipe): { modes: number } {
  const signal = readCsv(recipe.inputs.signal_modes_csv);
  const idler = readCsv(recipe.inputs.idler_modes_csv);
  const meta = JSON.parse(readFileSync(recipe.inputs.metadata_json, "utf8")) as {
    config?: { pump_sigma_nm?: number; pump_order?: number };
    lambda_p_nm?: number;
  };
  if (
    meta.lambda_p_nm === undefined ||
    meta.config?.pump_sigma_nm === undefined
  ) {
    throw new SchemaMismatch(
      `${recipe.inputs.metadata_json}: missing lambda_p_nm / config.pump_sigma_nm`,
    );
  }

  const nmMode = recipe.axis_units === "nm";
  const toUnit = (w: number) => (nmMode ? ((2 * Math.PI * C_LIGHT) / w) * 1e9 : w);
  const unitLabel = nmMode ? "wavelength (nm)" : "angular frequency (rad/s)";

  const W = recipe.width;
  const H = recipe.height;
  const panelW = (W - 200) / 2;
  const bottom = H - 60;
  const plotH = H - 130;

  const parts: string[] = [];
  const panels: [typeof signal, string, number][] = [
    [signal, "signal", 80],
    [idler, "idler", 140 + panelW],
  ];
  const modeColors = ["steelblue", "magenta"];

  for (const [table, label, left] of panels) {
    const omega = column(table, "omega_rad_s");
    const xs = omega.map(toUnit);
    const sx = linearScale([Math.min(...xs), Math.max(...xs)], [left, left + panelW]);
    const sy = linearScale([-1.1, 1.1], [bottom, bottom - plotH]);
    parts.push(`<line x1="${left}" y1="${fmt(sy(0))}" x2="${fmt(left + panelW)}" y2="${fmt(sy(0))}" stroke="#ccc"/>`);

    const nModes = label === "idler" ? 2 : 1;
    for (let mode = 0; mode < nModes; mode++) {
      const re = column(table, `mode${mode}_re`);
      parts.push(
        `<polyline fill="none" stroke="${modeColors[mode]}" stroke-width="1.6" ` +
          `points="${polyline(xs, normalizedPeak(re), sx, sy)}"/>`,
      );
    }

    if (label === "signal") {
      // pump spectral shape transported to the signal axis
      const sigma =
        (2 * Math.PI * C_LIGHT * meta.config.pump_sigma_nm! * 1e-9) /
        (meta.lambda_p_nm! * 1e-9) ** 2;
      const order = meta.config.pump_order ?? 0;
      const w0 = (Math.PI * C_LIGHT) / (meta.lambda_p_nm! * 1e-9);
      const pump = omega.map((w) => {
        const x = (w - w0) / sigma;
        return hermite(order, x) * Math.exp(-0.5 * x * x);
      });
      parts.push(
        `<polyline fill="none" stroke="crimson" stroke-width="1.2" stroke-dasharray="5 3" ` +
          `points="${polyline(xs, normalizedPeak(pump), sx, sy)}"/>`,
      );
    }

    if (label === "idler" && recipe.filter_band_nm && nmMode) {
      const [lo, hi] = recipe.filter_band_nm;
      const x0 = sx(Math.max(lo, Math.min(...xs)));
      const x1 = sx(Math.min(hi, Math.max(...xs)));
      parts.push(
        `<rect x="${fmt(Math.min(x0, x1))}" y="${bottom - plotH}" width="${fmt(Math.abs(x1 - x0))}" height="${plotH}" ` +
          `fill="orange" fill-opacity="0.15" stroke="orange" stroke-dasharray="6 3"/>`,
      );
    }

    parts.push(axis(sx, { label: `${label} ${unitLabel}`, side: "bottom", length: panelW, offset: { x: left, y: bottom } }));
    if (label === "signal") {
      parts.push(axis(sy, { label: "normalized amplitude", side: "left", length: plotH, offset: { x: left, y: bottom } }));
      parts.push(`<text x="${left + 8}" y="${bottom - plotH + 16}" font-size="10" fill="crimson">pump (dashed)</text>`);
    }
  }
  if (recipe.title) {
    parts.push(`<text x="${W / 2}" y="22" font-size="13" text-anchor="middle">${recipe.title}</text>`);
  }
  writeFileSync(recipe.output, svgDocument(W, H, parts.join("\n")));
  return { modes: 2 };
}
