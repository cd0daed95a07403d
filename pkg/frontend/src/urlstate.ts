/**
 * View state in the URL fragment, so every view is a shareable deep link.
 *
 * #word=targ&axes=1,2&clique=0 names a word, an axis pair, and a selected
 * sense; decode(encode(s)) round-trips, and defaults are omitted to keep
 * links short. Pan/zoom and the hull toggle are deliberately not encoded:
 * they are presentation, not state worth sharing.
 */

export interface ViewState {
  word: string | null;
  /** null lets the server pick the most frequent reading of the key. */
  pos: string | null;
  k1: number;
  k2: number;
  /** Selected sense point; mutually exclusive with cluster. */
  clique: number | null;
  /** Selected hull; mutually exclusive with clique. */
  cluster: number | null;
}

export const DEFAULT_STATE: ViewState = {
  word: null,
  pos: null,
  k1: 1,
  k2: 2,
  clique: null,
  cluster: null,
};

export function encodeState(s: ViewState): string {
  const parts: string[] = [];
  if (s.word !== null) {
    parts.push(`word=${encodeURIComponent(s.word)}`);
    if (s.pos !== null) parts.push(`pos=${encodeURIComponent(s.pos)}`);
  }
  // axes survive even without a word, mirroring decode
  if (s.k1 !== DEFAULT_STATE.k1 || s.k2 !== DEFAULT_STATE.k2) {
    parts.push(`axes=${s.k1},${s.k2}`);
  }
  if (s.word !== null) {
    if (s.clique !== null) parts.push(`clique=${s.clique}`);
    else if (s.cluster !== null) parts.push(`cluster=${s.cluster}`);
  }
  return parts.length ? `#${parts.join("&")}` : "";
}

/** Parse a fragment; anything malformed falls back to the default field. */
export function decodeState(hash: string): ViewState {
  const s: ViewState = { ...DEFAULT_STATE };
  const q = new URLSearchParams(hash.startsWith("#") ? hash.slice(1) : hash);

  const word = q.get("word");
  if (word) s.word = word;
  const pos = q.get("pos");
  if (pos) s.pos = pos;

  const axes = /^(\d+),(\d+)$/.exec(q.get("axes")?.trim() ?? "");
  if (axes) {
    const k1 = parseInt(axes[1], 10);
    const k2 = parseInt(axes[2], 10);
    if (k1 >= 1 && k2 >= 1 && k1 !== k2) {
      s.k1 = k1;
      s.k2 = k2;
    }
  }

  const clique = q.get("clique");
  const cluster = q.get("cluster");
  if (clique !== null && /^\d+$/.test(clique)) s.clique = parseInt(clique, 10);
  else if (cluster !== null && /^\d+$/.test(cluster)) s.cluster = parseInt(cluster, 10);

  if (s.word === null) {
    // a selection cannot outlive its word
    s.pos = null;
    s.clique = null;
    s.cluster = null;
  }
  return s;
}

export function sameState(a: ViewState, b: ViewState): boolean {
  return (
    a.word === b.word &&
    a.pos === b.pos &&
    a.k1 === b.k1 &&
    a.k2 === b.k2 &&
    a.clique === b.clique &&
    a.cluster === b.cluster
  );
}
