/** Viridis-style colormap from a fixed anchor table (linear interpolation). */

const ANCHORS: [number, number, number][] = [
  [68, 1, 84],
  [71, 19, 101],
  [72, 36, 117],
  [70, 52, 128],
  [65, 68, 135],
  [59, 82, 139],
  [53, 95, 141],
  [47, 108, 142],
  [42, 120, 142],
  [37, 132, 142],
  [33, 145, 140],
  [30, 156, 137],
  [34, 168, 132],
  [47, 180, 124],
  [68, 191, 112],
  [94, 201, 98],
  [122, 209, 81],
  [155, 217, 60],
  [189, 223, 38],
  [223, 227, 24],
  [253, 231, 37],
];

export function viridis(t: number): [number, number, number] {
  const x = Math.min(1, Math.max(0, t)) * (ANCHORS.length - 1);
  const i = Math.min(ANCHORS.length - 2, Math.floor(x));
  const f = x - i;
  const a = ANCHORS[i];
  const b = ANCHORS[i + 1];
  return [
    Math.round(a[0] + f * (b[0] - a[0])),
    Math.round(a[1] + f * (b[1] - a[1])),
    Math.round(a[2] + f * (b[2] - a[2])),
  ];
}
