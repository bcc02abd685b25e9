/** Deterministic SVG building blocks: no timestamps, fixed formatting. */

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toPrecision(6);
  return s.includes(".") || s.includes("e")
    ? String(Number(s))
    : s;
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const f = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

/** ~n round tick positions covering the domain. */
export function ticks(domain: [number, number], n = 5): number[] {
  const [lo, hi] = domain;
  const span = hi - lo || 1;
  const step0 = span / Math.max(1, n);
  const mag = Math.pow(10, Math.floor(Math.log10(Math.abs(step0))));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= step0) {
      step = m * mag;
      break;
    }
  }
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-9 * span; v += step) {
    out.push(Number(v.toPrecision(10)));
  }
  return out;
}

export function polyline(xs: number[], ys: number[], sx: Scale, sy: Scale): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) continue;
    pts.push(`${fmt(sx(xs[i]))},${fmt(sy(ys[i]))}`);
  }
  return pts.join(" ");
}

export interface AxisOptions {
  label: string;
  side: "bottom" | "left";
  length: number;
  offset: { x: number; y: number };
}

export function axis(scale: Scale, opt: AxisOptions): string {
  const parts: string[] = [];
  const { x, y } = opt.offset;
  if (opt.side === "bottom") {
    parts.push(
      `<line x1="${fmt(x)}" y1="${fmt(y)}" x2="${fmt(x + opt.length)}" y2="${fmt(y)}" stroke="black"/>`,
    );
    for (const t of ticks(scale.domain)) {
      const px = scale(t);
      parts.push(`<line x1="${fmt(px)}" y1="${fmt(y)}" x2="${fmt(px)}" y2="${fmt(y + 5)}" stroke="black"/>`);
      parts.push(
        `<text x="${fmt(px)}" y="${fmt(y + 17)}" font-size="10" text-anchor="middle">${fmt(t)}</text>`,
      );
    }
    parts.push(
      `<text x="${fmt(x + opt.length / 2)}" y="${fmt(y + 32)}" font-size="11" text-anchor="middle">${opt.label}</text>`,
    );
  } else {
    parts.push(
      `<line x1="${fmt(x)}" y1="${fmt(y)}" x2="${fmt(x)}" y2="${fmt(y - opt.length)}" stroke="black"/>`,
    );
    for (const t of ticks(scale.domain)) {
      const py = scale(t);
      parts.push(`<line x1="${fmt(x - 5)}" y1="${fmt(py)}" x2="${fmt(x)}" y2="${fmt(py)}" stroke="black"/>`);
      parts.push(
        `<text x="${fmt(x - 7)}" y="${fmt(py + 3)}" font-size="10" text-anchor="end">${fmt(t)}</text>`,
      );
    }
    parts.push(
      `<text x="${fmt(x - 42)}" y="${fmt(y - opt.length / 2)}" font-size="11" text-anchor="middle" transform="rotate(-90 ${fmt(x - 42)} ${fmt(y - opt.length / 2)})">${opt.label}</text>`,
    );
  }
  return parts.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}
