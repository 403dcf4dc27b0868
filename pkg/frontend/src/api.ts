/** Thin REST client. All calls go through the endpoints the analysis
 * server exposes; nothing here reaches into server internals. */

import { formatGroups, type Groups } from './grouping';
import type {
  PlotData,
  ReconstructionResponse,
  SessionInfo,
  WcorrelationResponse,
} from './types';

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function unwrap<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      detail = (await resp.json()).detail ?? detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(resp.status, detail);
  }
  return resp.json() as Promise<T>;
}

export class WorkbenchClient {
  constructor(private base: string = '') {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  async createSession(dataset: unknown, lag: number): Promise<SessionInfo> {
    const resp = await fetch(this.url('/api/session'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ dataset, lag }),
    });
    return unwrap<SessionInfo>(resp);
  }

  async plotdata(sessionId: string): Promise<PlotData> {
    return unwrap(await fetch(this.url(`/api/session/${sessionId}/plotdata`)));
  }

  async decompositionAtLag(sessionId: string, lag: number): Promise<unknown> {
    return unwrap(
      await fetch(this.url(`/api/session/${sessionId}/decomposition?lag=${lag}`)),
    );
  }

  /** Submits the grouping using the same grammar the CLI accepts. */
  async submitGrouping(
    sessionId: string,
    groups: Groups,
    residual: boolean,
  ): Promise<ReconstructionResponse> {
    const resp = await fetch(this.url(`/api/session/${sessionId}/grouping`), {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ groups: formatGroups(groups), residual }),
    });
    return unwrap<ReconstructionResponse>(resp);
  }

  async wcorrelation(sessionId: string): Promise<WcorrelationResponse> {
    return unwrap(await fetch(this.url(`/api/session/${sessionId}/wcorrelation`)));
  }

  async exportSession(sessionId: string): Promise<unknown> {
    return unwrap(await fetch(this.url(`/api/session/${sessionId}/export`)));
  }
}
