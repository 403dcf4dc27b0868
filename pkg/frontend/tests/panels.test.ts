import { describe, expect, it } from 'vitest';

import { panelSpecs, renderPanels } from '../src/panels';
import type { ReconstructionResponse } from '../src/types';

function response(labels: string[]): ReconstructionResponse {
  return {
    fingerprint: 'f',
    groups: labels.map((label, i) => ({
      group: label,
      share: 0.5 / (i + 1),
      variables: [
        {
          name: 'curves',
          grid: [0, 0.5, 1],
          values: [
            [1, 2, 3],
            [2, 3, 4],
          ],
        },
      ],
    })),
  };
}

describe('panel specs', () => {
  it('builds exactly one panel per group', () => {
    const specs = panelSpecs(response(['1', '2,3', '4,5']));
    expect(specs.map((s) => s.label)).toEqual(['1', '2,3', '4,5']);
    expect(specs.every((s) => !s.isResidual)).toBe(true);
  });

  it('flags the residual panel when the server appends one', () => {
    const specs = panelSpecs(response(['1', '2,3', 'residual']));
    expect(specs).toHaveLength(3);
    expect(specs[2].isResidual).toBe(true);
    expect(specs.filter((s) => s.isResidual)).toHaveLength(1);
  });

  it('formats shares as percentages', () => {
    const specs = panelSpecs(response(['1']));
    expect(specs[0].sharePercent).toBe('50.0%');
  });
});

describe('panel markup', () => {
  it('emits one section per group with its label', () => {
    const html = renderPanels(response(['1', '2,3']));
    const sections = html.match(/<section class="panel"/g) ?? [];
    expect(sections).toHaveLength(2);
    expect(html).toContain('data-group="1"');
    expect(html).toContain('data-group="2,3"');
  });

  it('titles the residual panel as residual, not as a group', () => {
    const html = renderPanels(response(['1', 'residual']));
    expect(html).toContain('<h3>residual');
    expect(html).not.toContain('group residual');
  });

  it('draws one trace per variable', () => {
    const html = renderPanels(response(['1']));
    expect(html.match(/class="trace"/g)).toHaveLength(1);
    expect(html).toContain('data-variable="curves"');
  });
});
