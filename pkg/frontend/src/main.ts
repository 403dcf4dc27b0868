import './style.css';
import { WorkbenchClient, ApiError } from './api';
import {
  leftFunctionLine,
  pairedScatter,
  rightVectorGrid,
  screeChart,
  wcorHeatmap,
} from './charts';
import {
  assignComponent,
  formatGroups,
  proposeMerge,
  ungrouped,
  type Groups,
} from './grouping';
import { renderPanels } from './panels';
import type { PlotData } from './types';

const app = document.querySelector<HTMLDivElement>('#app')!;
app.innerHTML = `
  <header>
    <h1>Decomposition workbench</h1>
    <label>dataset <input id="file" type="file" accept=".json"/></label>
    <label>lag <input id="lag" type="number" min="2" value="20"/></label>
    <span id="status"></span>
  </header>
  <main hidden id="views">
    <section><h2>Scree</h2><div id="scree"></div></section>
    <section><h2>w-correlation</h2>
      <div id="wcor"></div>
      <p class="hint">click a cell to propose merging its two components</p>
    </section>
    <section><h2>Right vectors</h2><div id="rv"></div></section>
    <section><h2>Paired</h2><div id="paired"></div></section>
    <section><h2>Left functions</h2>
      <label>lag <input id="lag-scrub" type="range" min="0" value="0"/>
        <output id="lag-out">0</output></label>
      <div id="leftfns"></div>
    </section>
    <section><h2>Grouping</h2>
      <div id="chips"></div>
      <label><input id="residual" type="checkbox"/> include residual</label>
      <button id="apply">apply</button>
      <div id="panels"></div>
    </section>
  </main>
`;

const client = new WorkbenchClient('');
let sessionId = '';
let plot: PlotData | null = null;
let groups: Groups = [];
let pendingLag = 0;

const el = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;
const status = (msg: string) => {
  el<HTMLSpanElement>('status').textContent = msg;
};

function renderStatic(p: PlotData): void {
  el('views').hidden = false;
  el('scree').innerHTML = screeChart(p.scree.sigma, p.scree.cumulative_share);
  el('rv').innerHTML = rightVectorGrid(p.right_vectors);
  el('paired').innerHTML = p.paired
    .map((pair) => pairedScatter(pair.components, pair.coordinates))
    .join('');
  const scrub = el<HTMLInputElement>('lag-scrub');
  scrub.max = String(p.L - 1);
  scrub.value = '0';
  renderLeftFunctions(0);
}

function renderLeftFunctions(lag: number): void {
  if (!plot) return;
  el('lag-out').textContent = String(lag);
  el('leftfns').innerHTML = plot.left_functions
    .map((lf) => {
      const series = lf.values
        .map(
          (comp, i) =>
            `<figure><figcaption>${lf.variable} psi${i + 1}</figcaption>` +
            `${leftFunctionLine(lf.grid as number[], comp[lag])}</figure>`,
        )
        .join('');
      return `<div class="leftfn-var">${series}</div>`;
    })
    .join('');
}

function renderChips(): void {
  if (!plot) return;
  const loose = ungrouped(groups, plot.rank).slice(0, 12);
  const groupChips = groups
    .map(
      (g, idx) =>
        `<span class="chip group" data-group="${idx}">${g.join(',')}</span>`,
    )
    .join('');
  const looseChips = loose
    .map((c) => `<button class="chip loose" data-component="${c}">${c}</button>`)
    .join('');
  el('chips').innerHTML =
    `<div class="row">groups: ${groupChips || '<em>none</em>'} ` +
    `<button id="new-group" ${loose.length ? '' : 'disabled'}>+ group</button></div>` +
    `<div class="row">ungrouped: ${looseChips || '<em>none</em>'}</div>` +
    `<code>${groups.length ? formatGroups(groups) : ''}</code>`;
  el('chips')
    .querySelectorAll<HTMLButtonElement>('.chip.loose')
    .forEach((btn) =>
      btn.addEventListener('click', () => {
        const component = Number(btn.dataset.component);
        const target = groups.length ? groups.length - 1 : -1;
        groups = assignComponent(groups, component, target);
        renderChips();
      }),
    );
  const newGroup = document.getElementById('new-group');
  newGroup?.addEventListener('click', () => {
    if (!plot) return;
    const loose2 = ungrouped(groups, plot.rank);
    if (loose2.length) {
      groups = assignComponent(groups, loose2[0], -1);
      renderChips();
    }
  });
}

async function refreshWcor(): Promise<void> {
  const wc = await client.wcorrelation(sessionId);
  el('wcor').innerHTML = wcorHeatmap(wc.labels, wc.matrix);
  el('wcor')
    .querySelectorAll<SVGRectElement>('rect.cell')
    .forEach((cell) =>
      cell.addEventListener('click', () => {
        const a = Number(cell.dataset.a);
        const b = Number(cell.dataset.b);
        if (!Number.isInteger(a) || !Number.isInteger(b)) return;
        groups = proposeMerge(groups, a, b);
        renderChips();
        status(`proposed merge of ${a} and ${b}; review and apply`);
      }),
    );
}

async function openSession(dataset: unknown): Promise<void> {
  const lag = Number(el<HTMLInputElement>('lag').value);
  status('decomposing...');
  try {
    const info = await client.createSession(dataset, lag);
    sessionId = info.id;
    plot = await client.plotdata(sessionId);
    groups = [];
    renderStatic(plot);
    renderChips();
    await refreshWcor();
    status(`session ${info.id}: rank ${info.rank}, L=${info.lag}`);
  } catch (err) {
    status(err instanceof ApiError ? `server: ${err.message}` : String(err));
  }
}

el<HTMLInputElement>('file').addEventListener('change', async (ev) => {
  const input = ev.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  await openSession(JSON.parse(await file.text()));
});

el<HTMLInputElement>('lag').addEventListener('change', async () => {
  if (!sessionId || !plot) return;
  const lag = Number(el<HTMLInputElement>('lag').value);
  if (lag === pendingLag) return;
  pendingLag = lag;
  await client.decompositionAtLag(sessionId, lag);
  plot = await client.plotdata(sessionId);
  groups = [];
  renderStatic(plot);
  renderChips();
  await refreshWcor();
});

el<HTMLInputElement>('lag-scrub').addEventListener('input', () => {
  renderLeftFunctions(Number(el<HTMLInputElement>('lag-scrub').value));
});

el<HTMLButtonElement>('apply').addEventListener('click', async () => {
  if (!sessionId || groups.length === 0) {
    status('define at least one group first');
    return;
  }
  const residual = el<HTMLInputElement>('residual').checked;
  try {
    const resp = await client.submitGrouping(sessionId, groups, residual);
    el('panels').innerHTML = renderPanels(resp);
    await refreshWcor();
    status(`${resp.groups.length} reconstruction panel(s)`);
  } catch (err) {
    status(err instanceof ApiError ? `server: ${err.message}` : String(err));
  }
});
