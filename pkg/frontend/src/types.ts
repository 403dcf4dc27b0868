/** Payload shapes returned by the analysis server. */

export interface SessionInfo {
  id: string;
  lag: number;
  rank: number;
  fingerprint: string;
}

export interface ScreeData {
  sigma: number[];
  cumulative_share: number[];
}

export interface PairedData {
  components: [number, number];
  coordinates: [number, number][];
}

export interface LeftFunctionData {
  variable: string;
  grid: number[] | number[][];
  /** values[component][lag][site] */
  values: number[][][];
}

export interface PlotData {
  fingerprint: string;
  scree: ScreeData;
  right_vectors: number[][];
  paired: PairedData[];
  left_functions: LeftFunctionData[];
  L: number;
  K: number;
  rank: number;
}

export interface VariablePayload {
  name: string;
  grid: number[] | number[][];
  values: number[][];
}

export interface GroupReconstruction {
  group: string;
  share: number;
  variables: VariablePayload[];
}

export interface ReconstructionResponse {
  fingerprint: string;
  groups: GroupReconstruction[];
}

export interface WcorrelationResponse {
  fingerprint: string;
  labels: string[];
  matrix: number[][];
}
