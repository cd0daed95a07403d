/**
 * JSON documents served by the atlas HTTP API (version 1).
 *
 * These mirror the server shapes field for field. The client never
 * recomputes coordinates or shares: every number rendered on screen is a
 * value from one of these documents, verbatim.
 */

/** A lexical unit reference as the API sends it: [key, pos]. */
export type UnitRef = [string, string];

export interface WordInfo {
  key: string;
  pos: string;
  freq: number;
}

/** One /api/words entry; unmapped words exist in the corpus but have no map. */
export interface WordEntry extends WordInfo {
  mapped: boolean;
}

export interface WordsDocument {
  version: number;
  words: WordEntry[];
}

/** One clique of the headword's contexonym graph, placed at its row coordinates. */
export interface MapPoint {
  clique: number;
  x: number;
  y: number;
  size: number;
  members: UnitRef[];
}

/** One contexonym label, placed at its column coordinates. */
export interface MapLabel {
  key: string;
  pos: string;
  x: number;
  y: number;
  freq: number;
}

export interface MapCluster {
  id: number;
  cliques: number[];
  label: UnitRef[];
}

export interface MapDocument {
  version: number;
  word: WordInfo;
  axes: [number, number];
  n_axes: number;
  singular_values: number[];
  inertia_total: number;
  inertia_share: number[];
  capped: boolean;
  points: MapPoint[];
  labels: MapLabel[];
  clusters: MapCluster[];
}

export interface ContextRow {
  ctx_id: number;
  doc_id: string;
  text: string;
}

export interface ContextsDocument {
  version: number;
  word: { key: string; pos: string };
  clique: number;
  contexts: ContextRow[];
}

export interface ManifestDocument {
  version: number;
  manifest: Record<string, unknown>;
}

/** Error payload for any non-2xx response. */
export interface ErrorBody {
  error: string;
  message?: string;
  reason?: string;
}
