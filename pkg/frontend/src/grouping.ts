/** Grouping model shared by the chips editor and the heatmap.
 *
 * Groups are ordered lists of 1-based component indices, pairwise disjoint.
 * The wire format is the CLI grammar: groups joined by ";", indices within
 * a group joined by "," (e.g. "1;2,3;4,5").
 */

export type Groups = number[][];

export function formatGroups(groups: Groups): string {
  return groups.map((g) => [...g].sort((a, b) => a - b).join(',')).join(';');
}

export function parseGroups(text: string): Groups {
  const groups: Groups = [];
  for (const part of text.split(';')) {
    const trimmed = part.trim();
    if (!trimmed) continue;
    const indices = trimmed.split(',').map((tok) => {
      const n = Number(tok.trim());
      if (!Number.isInteger(n) || n < 1) {
        throw new Error(`bad component index "${tok.trim()}"`);
      }
      return n;
    });
    groups.push(indices);
  }
  if (groups.length === 0) throw new Error(`empty grouping "${text}"`);
  validateGroups(groups);
  return groups;
}

export function validateGroups(groups: Groups, rank?: number): void {
  const seen = new Set<number>();
  for (const g of groups) {
    if (g.length === 0) throw new Error('empty group');
    for (const i of g) {
      if (!Number.isInteger(i) || i < 1) throw new Error(`bad index ${i}`);
      if (rank !== undefined && i > rank) {
        throw new Error(`component ${i} exceeds rank ${rank}`);
      }
      if (seen.has(i)) throw new Error(`component ${i} used twice`);
      seen.add(i);
    }
  }
}

export function ungrouped(groups: Groups, rank: number): number[] {
  const used = new Set(groups.flat());
  const left: number[] = [];
  for (let i = 1; i <= rank; i++) if (!used.has(i)) left.push(i);
  return left;
}

/** Move one component into the group at `target` (-1 = a fresh group),
 * removing it from wherever it currently sits. Drops emptied groups. */
export function assignComponent(groups: Groups, component: number, target: number): Groups {
  const cleaned = groups
    .map((g) => g.filter((i) => i !== component))
    .filter((g) => g.length > 0);
  if (target === -1) return [...cleaned, [component]];
  if (target < 0 || target >= cleaned.length) {
    throw new Error(`no group at position ${target}`);
  }
  return cleaned.map((g, idx) => (idx === target ? [...g, component] : g));
}

/** A heatmap click on cell (a, b) proposes putting the two elementary
 * components into one group. The proposal merges the groups containing
 * them (or adopts a loose component) and always yields a disjoint
 * grouping; a no-op when they are grouped together already. */
export function proposeMerge(groups: Groups, a: number, b: number): Groups {
  if (a === b) return groups;
  const holder = (c: number) => groups.findIndex((g) => g.includes(c));
  const ia = holder(a);
  const ib = holder(b);
  if (ia !== -1 && ia === ib) return groups;
  const merged = [
    ...(ia === -1 ? [a] : groups[ia]),
    ...(ib === -1 ? [b] : groups[ib]),
  ];
  const rest = groups.filter((_, idx) => idx !== ia && idx !== ib);
  const at = ia === -1 ? (ib === -1 ? rest.length : Math.min(ib, rest.length)) : Math.min(ia, rest.length);
  const next = [...rest];
  next.splice(at, 0, merged);
  validateGroups(next);
  return next;
}
