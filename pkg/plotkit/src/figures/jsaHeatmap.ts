import { writeFileSync } from "node:fs";

import { viridis } from "../color.js";
import { column, readCsv } from "../csv.js";
import { encodePng } from "../png.js";
import { axis, fmt, linearScale, polyline, svgDocument } from "../svg.js";
import type { Recipe } from "../schema.js";

const C_LIGHT = 299792458;

export interface HeatmapChecks {
  argmax_cell: [number, number];
  center_cell: [number, number];
  argmax_within_one_pixel: boolean;
}

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

export function renderJsaHeatmap(recipe: Recipe): HeatmapChecks {
  const table = readCsv(recipe.inputs.grid_csv);
  const ws = column(table, "omega_s_rad_s");
  const wi = column(table, "omega_i_rad_s");
  const abs2 = column(table, "abs2");

  const axisS = uniqueSorted(ws);
  const axisI = uniqueSorted(wi);
  const n = axisS.length;
  const m = axisI.length;
  const idxS = new Map(axisS.map((v, i) => [v, i]));
  const idxI = new Map(axisI.map((v, i) => [v, i]));

  const grid = new Float64Array(n * m);
  for (let r = 0; r < ws.length; r++) {
    grid[idxS.get(ws[r])! * m + idxI.get(wi[r])!] = abs2[r];
  }
  let peak = 0;
  let argmax = 0;
  for (let i = 0; i < grid.length; i++) {
    if (grid[i] > peak) {
      peak = grid[i];
      argmax = i;
    }
  }
  const argmaxCell: [number, number] = [Math.floor(argmax / m), argmax % m];
  const center: [number, number] = [(n - 1) / 2, (m - 1) / 2];
  const within =
    Math.abs(argmaxCell[0] - center[0]) <= 1 && Math.abs(argmaxCell[1] - center[1]) <= 1;

  // raster: x = signal axis, y = idler axis (row 0 = largest idler value);
  // nm units flip both axes so wavelength still increases along each axis
  const nmMode = recipe.axis_units === "nm";
  const rgb = new Uint8Array(n * m * 3);
  for (let y = 0; y < m; y++) {
    for (let x = 0; x < n; x++) {
      const js = nmMode ? n - 1 - x : x;
      const ki = nmMode ? y : m - 1 - y;
      const [r, g, b] = viridis(peak > 0 ? grid[js * m + ki] / peak : 0);
      const o = (y * n + x) * 3;
      rgb[o] = r;
      rgb[o + 1] = g;
      rgb[o + 2] = b;
    }
  }
  const png = encodePng(n, m, rgb);

  const toUnit = (w: number) => (nmMode ? (2 * Math.PI * C_LIGHT) / w * 1e9 : w);
  const sVals = axisS.map(toUnit);
  const iVals = axisI.map(toUnit);
  const sDom: [number, number] = [Math.min(...sVals), Math.max(...sVals)];
  const iDom: [number, number] = [Math.min(...iVals), Math.max(...iVals)];

  const W = recipe.width;
  const H = recipe.height;
  const left = 70;
  const bottom = H - 60;
  const plotW = W - 250;
  const plotH = H - 170;
  const top = bottom - plotH;
  const sx = linearScale(sDom, [left, left + plotW]);
  const sy = linearScale(iDom, [bottom, top]);

  const parts: string[] = [];
  parts.push(
    `<image x="${left}" y="${top}" width="${plotW}" height="${plotH}" preserveAspectRatio="none" ` +
      `style="image-rendering:pixelated" href="data:image/png;base64,${png.toString("base64")}"/>`,
  );
  const unitLabel = nmMode ? "wavelength (nm)" : "angular frequency (rad/s)";
  parts.push(axis(sx, { label: `signal ${unitLabel}`, side: "bottom", length: plotW, offset: { x: left, y: bottom } }));
  parts.push(axis(sy, { label: `idler ${unitLabel}`, side: "left", length: plotH, offset: { x: left, y: bottom } }));

  if (recipe.filter_band_nm && nmMode) {
    const [lo, hi] = recipe.filter_band_nm;
    const y1 = sy(Math.max(lo, iDom[0]));
    const y0 = sy(Math.min(hi, iDom[1]));
    parts.push(
      `<rect x="${left}" y="${fmt(Math.min(y0, y1))}" width="${plotW}" height="${fmt(Math.abs(y1 - y0))}" ` +
        `fill="none" stroke="orange" stroke-width="1.5" stroke-dasharray="6 3"/>`,
    );
  }

  // marginal panels: signal on top, idler at right
  const sMar = new Array<number>(n).fill(0);
  const iMar = new Array<number>(m).fill(0);
  for (let j = 0; j < n; j++) {
    for (let k = 0; k < m; k++) {
      sMar[j] += grid[j * m + k];
      iMar[k] += grid[j * m + k];
    }
  }
  const sPeak = Math.max(...sMar) || 1;
  const iPeak = Math.max(...iMar) || 1;
  const marS = linearScale([0, sPeak], [top - 8, top - 78]);
  parts.push(
    `<polyline fill="none" stroke="crimson" stroke-width="1.5" points="` +
      polyline(sVals, sMar, sx, marS) +
      `"/>`,
  );
  const marI = linearScale([0, iPeak], [left + plotW + 8, left + plotW + 78]);
  const iPts: string[] = [];
  for (let k = 0; k < m; k++) {
    iPts.push(`${fmt(marI(iMar[k]))},${fmt(sy(iVals[k]))}`);
  }
  parts.push(
    `<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="${iPts.join(" ")}"/>`,
  );
  if (recipe.title) {
    parts.push(`<text x="${W / 2}" y="20" font-size="13" text-anchor="middle">${recipe.title}</text>`);
  }

  writeFileSync(recipe.output, svgDocument(W, H, parts.join("\n")));
  return { argmax_cell: argmaxCell, center_cell: center, argmax_within_one_pixel: within };
}
