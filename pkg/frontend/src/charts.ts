/** SVG chart builders. Each returns markup as a string so rendering stays
 * pure and testable; event wiring happens in main.ts via data attributes. */

export interface Extent {
  width: number;
  height: number;
  pad: number;
}

const DEFAULT_EXTENT: Extent = { width: 320, height: 180, pad: 28 };

function svgOpen(e: Extent, cls: string): string {
  return `<svg class="${cls}" viewBox="0 0 ${e.width} ${e.height}" preserveAspectRatio="none">`;
}

function scaleLinear(domain: [number, number], range: [number, number]) {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function linePath(
  values: number[],
  e: Extent,
  domain?: [number, number],
): string {
  const lo = domain ? domain[0] : Math.min(...values);
  const hi = domain ? domain[1] : Math.max(...values);
  const x = scaleLinear([0, values.length - 1], [e.pad, e.width - e.pad]);
  const y = scaleLinear([lo, hi], [e.height - e.pad, e.pad]);
  return values
    .map((v, i) => `${i === 0 ? 'M' : 'L'}${x(i).toFixed(1)},${y(v).toFixed(1)}`)
    .join('');
}

/** Log-scale singular value bars with a cumulative-share line. */
export function screeChart(
  sigma: number[],
  cumulative: number[],
  selected: number | null = null,
  e: Extent = DEFAULT_EXTENT,
): string {
  const logs = sigma.map((s) => Math.log10(Math.max(s, 1e-300)));
  const lo = Math.min(...logs);
  const hi = Math.max(...logs);
  const y = scaleLinear([lo, hi], [e.height - e.pad, e.pad]);
  const slot = (e.width - 2 * e.pad) / sigma.length;
  const parts: string[] = [svgOpen(e, 'scree')];
  sigma.forEach((_, i) => {
    const top = y(logs[i]);
    const cls = i === selected ? 'bar selected' : 'bar';
    parts.push(
      `<rect class="${cls}" data-component="${i + 1}" ` +
        `x="${(e.pad + i * slot + 1).toFixed(1)}" y="${top.toFixed(1)}" ` +
        `width="${Math.max(slot - 2, 1).toFixed(1)}" ` +
        `height="${(e.height - e.pad - top).toFixed(1)}"/>`,
    );
  });
  const share = scaleLinear([0, 1], [e.height - e.pad, e.pad]);
  const path = cumulative
    .map((c, i) => {
      const px = e.pad + (i + 0.5) * slot;
      return `${i === 0 ? 'M' : 'L'}${px.toFixed(1)},${share(c).toFixed(1)}`;
    })
    .join('');
  parts.push(`<path class="cumulative" d="${path}"/>`);
  parts.push('</svg>');
  return parts.join('');
}

/** |w-correlation| heatmap; cells carry data-a / data-b component labels
 * so a click handler can propose merging the two. */
export function wcorHeatmap(
  labels: string[],
  matrix: number[][],
  e: Extent = { width: 260, height: 260, pad: 30 },
): string {
  const n = labels.length;
  const cell = (e.width - e.pad - 4) / n;
  const parts: string[] = [svgOpen(e, 'wcor')];
  for (let r = 0; r < n; r++) {
    for (let c = 0; c < n; c++) {
      const v = Math.abs(matrix[r][c]);
      const shade = Math.round(255 - 225 * Math.min(v, 1));
      parts.push(
        `<rect class="cell" data-a="${labels[r]}" data-b="${labels[c]}" ` +
          `x="${(e.pad + c * cell).toFixed(1)}" y="${(4 + r * cell).toFixed(1)}" ` +
          `width="${cell.toFixed(1)}" height="${cell.toFixed(1)}" ` +
          `fill="rgb(${shade},${shade},255)">` +
          `<title>|rho(${labels[r]}, ${labels[c]})| = ${v.toFixed(3)}</title></rect>`,
      );
    }
    parts.push(
      `<text class="lab" x="${e.pad - 4}" y="${(4 + (r + 0.7) * cell).toFixed(1)}" ` +
        `text-anchor="end">${labels[r]}</text>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}

/** Small multiples of right singular vector series. */
export function rightVectorGrid(vectors: number[][], e: Extent = DEFAULT_EXTENT): string {
  const rows = vectors
    .map((v, i) => {
      const path = linePath(v, e);
      return (
        `<figure class="rv"><figcaption>v${i + 1}</figcaption>` +
        `${svgOpen(e, 'rv-line')}<path d="${path}"/></svg></figure>`
      );
    })
    .join('');
  return `<div class="rv-grid">${rows}</div>`;
}

/** Scatter of consecutive right-vector pairs; periodic components trace
 * regular polygons. */
export function pairedScatter(
  components: [number, number],
  coords: [number, number][],
  e: Extent = { width: 180, height: 180, pad: 16 },
): string {
  const xs = coords.map((p) => p[0]);
  const ys = coords.map((p) => p[1]);
  const lim = Math.max(...xs.map(Math.abs), ...ys.map(Math.abs), 1e-12);
  const x = scaleLinear([-lim, lim], [e.pad, e.width - e.pad]);
  const y = scaleLinear([-lim, lim], [e.height - e.pad, e.pad]);
  const pts = coords
    .map((p, i) => `${i === 0 ? 'M' : 'L'}${x(p[0]).toFixed(1)},${y(p[1]).toFixed(1)}`)
    .join('');
  return (
    `<figure class="paired"><figcaption>${components[0]} vs ${components[1]}</figcaption>` +
    `${svgOpen(e, 'paired-path')}<path d="${pts}"/></svg></figure>`
  );
}

/** One left singular function at one lag, evaluated on a 1D grid. */
export function leftFunctionLine(
  sites: number[],
  values: number[],
  e: Extent = DEFAULT_EXTENT,
): string {
  void sites; // equally spaced render; sites kept for axis labelling later
  const path = linePath(values, e);
  return `${svgOpen(e, 'leftfn')}<path d="${path}"/></svg>`;
}
