/**
 * Typed fetch client for the read-only atlas API, plus the sequencing
 * primitive that makes overlapping requests safe to fire freely.
 */

import type {
  ContextsDocument,
  ErrorBody,
  ManifestDocument,
  MapDocument,
  WordsDocument,
} from "./types.js";

/** A non-2xx API response. Network failures stay plain TypeErrors. */
export class ApiError extends Error {
  readonly status: number;
  readonly body: ErrorBody;

  constructor(status: number, body: ErrorBody) {
    super(body.message ?? body.reason ?? body.error);
    this.name = "ApiError";
    this.status = status;
    this.body = body;
  }
}

export class ApiClient {
  /** Origin prefix, "" for same-origin; no trailing slash. */
  readonly base: string;

  constructor(base = "") {
    this.base = base.replace(/\/$/, "");
  }

  private async get<T>(path: string): Promise<T> {
    const resp = await fetch(this.base + path);
    const body = (await resp.json()) as T | ErrorBody;
    if (!resp.ok) {
      throw new ApiError(resp.status, body as ErrorBody);
    }
    return body as T;
  }

  words(prefix: string, limit: number): Promise<WordsDocument> {
    const enc = encodeURIComponent(prefix);
    return this.get(`/api/words?prefix=${enc}&limit=${limit}`);
  }

  map(word: string, k1: number, k2: number, pos?: string): Promise<MapDocument> {
    const tail = pos ? `&pos=${encodeURIComponent(pos)}` : "";
    return this.get(`/api/map/${encodeURIComponent(word)}?k1=${k1}&k2=${k2}${tail}`);
  }

  contexts(word: string, clique: number, pos?: string): Promise<ContextsDocument> {
    const tail = pos ? `?pos=${encodeURIComponent(pos)}` : "";
    return this.get(`/api/contexts/${encodeURIComponent(word)}/${clique}${tail}`);
  }

  manifest(): Promise<ManifestDocument> {
    return this.get("/api/manifest");
  }
}

export type GateResult<T> = { stale: true } | { stale: false; value: T };

/**
 * Last-write-wins resolution for concurrent in-flight fetches.
 *
 * Every run() takes the next sequence number; when its loader settles, the
 * result only counts if no newer run started meanwhile. Stale successes are
 * dropped and stale failures are swallowed, so callers apply whatever a
 * non-stale result says without checking timestamps themselves.
 */
export class LastWriteGate {
  private seq = 0;

  async run<T>(loader: () => Promise<T>): Promise<GateResult<T>> {
    const ticket = ++this.seq;
    try {
      const value = await loader();
      if (ticket !== this.seq) return { stale: true };
      return { stale: false, value };
    } catch (err) {
      if (ticket !== this.seq) return { stale: true };
      throw err;
    }
  }
}
