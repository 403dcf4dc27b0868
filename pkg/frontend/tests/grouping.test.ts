import { describe, expect, it } from 'vitest';

import {
  assignComponent,
  formatGroups,
  parseGroups,
  proposeMerge,
  ungrouped,
  validateGroups,
} from '../src/grouping';

describe('grammar round trip', () => {
  it('formats groups with ; and , separators', () => {
    expect(formatGroups([[1], [2, 3], [4, 5]])).toBe('1;2,3;4,5');
  });

  it('sorts indices inside each group', () => {
    expect(formatGroups([[3, 2], [1]])).toBe('2,3;1');
  });

  it('parses what it formats', () => {
    const groups = [[1], [2, 3], [4, 5]];
    expect(parseGroups(formatGroups(groups))).toEqual(groups);
  });

  it('tolerates whitespace and trailing separators', () => {
    expect(parseGroups(' 1 ; 2, 3 ;')).toEqual([[1], [2, 3]]);
  });

  it('rejects malformed indices', () => {
    expect(() => parseGroups('1;two')).toThrow(/bad component index/);
    expect(() => parseGroups('0;1')).toThrow();
    expect(() => parseGroups(';;')).toThrow(/empty/);
  });

  it('rejects duplicates across groups', () => {
    expect(() => parseGroups('1,2;2,3')).toThrow(/used twice/);
  });
});

describe('validateGroups', () => {
  it('checks the rank bound when given', () => {
    expect(() => validateGroups([[1], [2, 9]], 8)).toThrow(/exceeds rank/);
    expect(() => validateGroups([[1], [2, 8]], 8)).not.toThrow();
  });
});

describe('chip assignment', () => {
  it('moves a component into an existing group', () => {
    expect(assignComponent([[1], [2]], 3, 1)).toEqual([[1], [2, 3]]);
  });

  it('starts a fresh group for target -1', () => {
    expect(assignComponent([[1]], 2, -1)).toEqual([[1], [2]]);
  });

  it('removes the component from its old group first', () => {
    expect(assignComponent([[1, 3], [2]], 3, 1)).toEqual([[1], [2, 3]]);
  });

  it('drops groups emptied by the move', () => {
    expect(assignComponent([[3], [2]], 3, -1)).toEqual([[2], [3]]);
  });

  it('lists ungrouped components up to the rank', () => {
    expect(ungrouped([[1], [3, 4]], 6)).toEqual([2, 5, 6]);
  });
});

describe('heatmap merge proposal', () => {
  it('merges two loose components into one new group', () => {
    const next = proposeMerge([], 2, 3);
    expect(next).toEqual([[2, 3]]);
    expect(() => validateGroups(next)).not.toThrow();
  });

  it('adopts a loose component into an existing group', () => {
    expect(proposeMerge([[2, 3]], 4, 2)).toEqual([[4, 2, 3]]);
  });

  it('merges two existing groups and keeps the rest intact', () => {
    const next = proposeMerge([[1], [2, 3], [4, 5]], 3, 5);
    expect(next).toEqual([[1], [2, 3, 4, 5]]);
    expect(() => validateGroups(next)).not.toThrow();
  });

  it('is a no-op for already cohabiting components', () => {
    expect(proposeMerge([[2, 3]], 2, 3)).toEqual([[2, 3]]);
  });

  it('is a no-op on the diagonal', () => {
    expect(proposeMerge([[1], [2]], 2, 2)).toEqual([[1], [2]]);
  });

  it('always yields a disjoint grouping under random clicks', () => {
    let groups: number[][] = [];
    let seed = 12345;
    const rand = (n: number) => {
      seed = (seed * 1103515245 + 12345) % 2147483648;
      return (seed % n) + 1;
    };
    for (let step = 0; step < 200; step++) {
      groups = proposeMerge(groups, rand(10), rand(10));
      expect(() => validateGroups(groups, 10)).not.toThrow();
    }
  });
});
