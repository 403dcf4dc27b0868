/** Reconstruction panels: one per group, plus the residual when present. */

import { linePath, type Extent } from './charts';
import type { GroupReconstruction, ReconstructionResponse } from './types';

export interface PanelSpec {
  label: string;
  isResidual: boolean;
  sharePercent: string;
  variableNames: string[];
}

export function panelSpecs(resp: ReconstructionResponse): PanelSpec[] {
  return resp.groups.map((g) => ({
    label: g.group,
    isResidual: g.group === 'residual',
    sharePercent: `${(100 * g.share).toFixed(1)}%`,
    variableNames: g.variables.map((v) => v.name),
  }));
}

/** Mean-over-sites trace per variable, one line each. */
export function panelMarkup(
  group: GroupReconstruction,
  e: Extent = { width: 320, height: 140, pad: 24 },
): string {
  const lines = group.variables
    .map((v) => {
      const trace = v.values.map(
        (row) => row.reduce((acc, x) => acc + x, 0) / row.length,
      );
      return `<path class="trace" data-variable="${v.name}" d="${linePath(trace, e)}"/>`;
    })
    .join('');
  return (
    `<section class="panel" data-group="${group.group}">` +
    `<h3>${group.group === 'residual' ? 'residual' : `group ${group.group}`}` +
    ` <small>${(100 * group.share).toFixed(1)}%</small></h3>` +
    `<svg viewBox="0 0 ${e.width} ${e.height}" preserveAspectRatio="none">${lines}</svg>` +
    `</section>`
  );
}

export function renderPanels(resp: ReconstructionResponse): string {
  return resp.groups.map((g) => panelMarkup(g)).join('');
}
