import { writeFileSync } from "node:fs";

import { viridis } from "../color.js";
import { column, readCsv } from "../csv.js";
import { encodePng } from "../png.js";
import { axis, fmt, linearScale, svgDocument } from "../svg.js";
import type { Recipe } from "../schema.js";

export interface PurityChecks {
  k_edge_is_unity: boolean;
  min_purity: number;
}

export function renderPuritySurface(recipe: Recipe): PurityChecks {
  const table = readCsv(recipe.inputs.surface_csv);
  const ks = column(table, "K");
  const nbars = column(table, "nbar");
  const purity = column(table, "purity");

  const kAxis = [...new Set(ks)].sort((a, b) => a - b);
  const nAxis = [...new Set(nbars)].sort((a, b) => a - b);
  const kIdx = new Map(kAxis.map((v, i) => [v, i]));
  const nIdx = new Map(nAxis.map((v, i) => [v, i]));
  const grid = new Float64Array(kAxis.length * nAxis.length).fill(NaN);
  for (let r = 0; r < ks.length; r++) {
    grid[kIdx.get(ks[r])! * nAxis.length + nIdx.get(nbars[r])!] = purity[r];
  }

  // the K = 1 column of the surface is identically 1 (single-mode limit)
  let edgeUnity = true;
  if (kAxis[0] === 1.0) {
    for (let j = 0; j < nAxis.length; j++) {
      if (grid[j] !== 1.0) edgeUnity = false;
    }
  } else {
    edgeUnity = false;
  }
  const minPurity = Math.min(...purity);

  // raster: x = K, y = nbar (row 0 = largest nbar); color scaled 0.5..1
  const n = kAxis.length;
  const m = nAxis.length;
  const rgb = new Uint8Array(n * m * 3);
  for (let y = 0; y < m; y++) {
    for (let x = 0; x < n; x++) {
      const v = grid[x * m + (m - 1 - y)];
      const t = Number.isFinite(v) ? (v - 0.5) / 0.5 : 0;
      const [r, g, b] = viridis(t);
      const o = (y * n + x) * 3;
      rgb[o] = r;
      rgb[o + 1] = g;
      rgb[o + 2] = b;
    }
  }
  const png = encodePng(n, m, rgb);

  const W = recipe.width;
  const H = recipe.height;
  const left = 80;
  const bottom = H - 60;
  const plotW = W - 200;
  const plotH = H - 120;
  const sx = linearScale([kAxis[0], kAxis[n - 1]], [left, left + plotW]);
  const sy = linearScale([nAxis[0], nAxis[m - 1]], [bottom, bottom - plotH]);

  const parts: string[] = [];
  parts.push(
    `<image x="${left}" y="${bottom - plotH}" width="${plotW}" height="${plotH}" preserveAspectRatio="none" ` +
      `style="image-rendering:pixelated" href="data:image/png;base64,${png.toString("base64")}"/>`,
  );
  parts.push(axis(sx, { label: "effective mode number", side: "bottom", length: plotW, offset: { x: left, y: bottom } }));
  parts.push(axis(sy, { label: "mean photon number", side: "left", length: plotH, offset: { x: left, y: bottom } }));

  // colorbar
  const cbX = left + plotW + 30;
  const cbH = plotH;
  const cbPix = new Uint8Array(1 * 64 * 3);
  for (let y = 0; y < 64; y++) {
    const [r, g, b] = viridis(1 - y / 63);
    cbPix[y * 3] = r;
    cbPix[y * 3 + 1] = g;
    cbPix[y * 3 + 2] = b;
  }
  parts.push(
    `<image x="${cbX}" y="${bottom - cbH}" width="16" height="${cbH}" preserveAspectRatio="none" ` +
      `href="data:image/png;base64,${encodePng(1, 64, cbPix).toString("base64")}"/>`,
  );
  parts.push(`<text x="${cbX + 22}" y="${bottom - cbH + 10}" font-size="10">1.0</text>`);
  parts.push(`<text x="${cbX + 22}" y="${bottom}" font-size="10">0.5</text>`);
  parts.push(`<text x="${cbX + 8}" y="${bottom - cbH - 8}" font-size="11" text-anchor="middle">purity</text>`);
  if (recipe.title) {
    parts.push(`<text x="${W / 2}" y="20" font-size="13" text-anchor="middle">${recipe.title}</text>`);
  }
  writeFileSync(recipe.output, svgDocument(W, H, parts.join("\n")));
  return { k_edge_is_unity: edgeUnity, min_purity: minPurity };
}
