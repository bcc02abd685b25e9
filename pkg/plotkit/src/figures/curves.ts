import { writeFileSync } from "node:fs";

import { column, readCsv, textColumn } from "../csv.js";
import { axis, fmt, linearScale, polyline, svgDocument } from "../svg.js";
import type { Recipe } from "../schema.js";

const C_LIGHT = 299792458;

function finiteExtent(values: number[]): [number, number] {
  const v = values.filter(Number.isFinite);
  const lo = Math.min(...v);
  const hi = Math.max(...v);
  const pad = (hi - lo || Math.abs(lo) || 1) * 0.05;
  return [lo - pad, hi + pad];
}

/** Two stacked panels: GVM wavelength and angle against the noncollinear angle. */
export function renderGvmCurve(recipe: Recipe): { rows: number; solutions: number } {
  const table = readCsv(recipe.inputs.scan_csv);
  const theta = column(table, "theta_s_deg");
  const lam = column(table, "lambda_gvm_nm");
  const ang = column(table, "theta_gvm_deg");
  const status = textColumn(table, "status");

  const ok = status.map((s) => s === "ok");
  const W = recipe.width;
  const H = recipe.height;
  const left = 80;
  const plotW = W - 120;
  const panelH = (H - 150) / 2;

  const sx = linearScale(finiteExtent(theta), [left, left + plotW]);
  const parts: string[] = [];
  const panels: [number[], string, string][] = [
    [lam, "GVM wavelength (nm)", "crimson"],
    [ang, "GVM angle (deg)", "steelblue"],
  ];
  panels.forEach(([ys, label, color], p) => {
    const bottom = 60 + (p + 1) * panelH + p * 30;
    const sy = linearScale(finiteExtent(ys.filter((_, i) => ok[i])), [bottom, bottom - panelH]);
    const xs = theta.filter((_, i) => ok[i]);
    const vv = ys.filter((_, i) => ok[i]);
    parts.push(
      `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${polyline(xs, vv, sx, sy)}"/>`,
    );
    for (let i = 0; i < xs.length; i++) {
      parts.push(`<circle cx="${fmt(sx(xs[i]))}" cy="${fmt(sy(vv[i]))}" r="2.4" fill="${color}"/>`);
    }
    parts.push(axis(sy, { label, side: "left", length: panelH, offset: { x: left, y: bottom } }));
    if (p === panels.length - 1) {
      parts.push(
        axis(sx, { label: "noncollinear angle (deg)", side: "bottom", length: plotW, offset: { x: left, y: bottom } }),
      );
    }
  });
  if (recipe.title) {
    parts.push(`<text x="${W / 2}" y="22" font-size="13" text-anchor="middle">${recipe.title}</text>`);
  }
  writeFileSync(recipe.output, svgDocument(W, H, parts.join("\n")));
  return { rows: theta.length, solutions: ok.filter(Boolean).length };
}

/** Pump and signal group indices against the cut angle (their crossing is
 * the group-velocity-matching angle). */
export function renderGvCurve(recipe: Recipe): { crossing_deg: number | null } {
  const table = readCsv(recipe.inputs.curve_csv);
  const theta = column(table, "theta_c_deg");
  const kp = column(table, "inverse_gv_pump_s_m").map((v) => v * C_LIGHT);
  const ks = column(table, "inverse_gv_signal_s_m").map((v) => v * C_LIGHT);

  let crossing: number | null = null;
  for (let i = 1; i < theta.length; i++) {
    const d0 = kp[i - 1] - ks[i - 1];
    const d1 = kp[i] - ks[i];
    if (Number.isFinite(d0) && Number.isFinite(d1) && d0 * d1 <= 0) {
      crossing = theta[i - 1] + ((theta[i] - theta[i - 1]) * d0) / (d0 - d1 || 1);
      break;
    }
  }

  const W = recipe.width;
  const H = recipe.height;
  const left = 80;
  const bottom = H - 60;
  const plotW = W - 120;
  const plotH = H - 130;
  const sx = linearScale(finiteExtent(theta), [left, left + plotW]);
  const sy = linearScale(finiteExtent([...kp, ...ks]), [bottom, bottom - plotH]);

  const parts: string[] = [];
  parts.push(`<polyline fill="none" stroke="crimson" stroke-width="1.6" points="${polyline(theta, kp, sx, sy)}"/>`);
  parts.push(`<polyline fill="none" stroke="steelblue" stroke-width="1.6" points="${polyline(theta, ks, sx, sy)}"/>`);
  if (crossing !== null) {
    parts.push(
      `<line x1="${fmt(sx(crossing))}" y1="${bottom}" x2="${fmt(sx(crossing))}" y2="${bottom - plotH}" ` +
        `stroke="gray" stroke-dasharray="4 3"/>`,
    );
    parts.push(
      `<text x="${fmt(sx(crossing) + 4)}" y="${bottom - plotH + 14}" font-size="10">GVM ${fmt(crossing)} deg</text>`,
    );
  }
  parts.push(axis(sx, { label: "cut angle (deg)", side: "bottom", length: plotW, offset: { x: left, y: bottom } }));
  parts.push(axis(sy, { label: "group index", side: "left", length: plotH, offset: { x: left, y: bottom } }));
  parts.push(`<text x="${left + plotW - 8}" y="${bottom - plotH + 16}" font-size="11" text-anchor="end" fill="crimson">pump</text>`);
  parts.push(`<text x="${left + plotW - 8}" y="${bottom - plotH + 30}" font-size="11" text-anchor="end" fill="steelblue">signal</text>`);
  if (recipe.title) {
    parts.push(`<text x="${W / 2}" y="22" font-size="13" text-anchor="middle">${recipe.title}</text>`);
  }
  writeFileSync(recipe.output, svgDocument(W, H, parts.join("\n")));
  return { crossing_deg: crossing };
}
