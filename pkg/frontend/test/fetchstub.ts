/**
 * fetch stub backed by recorded server responses (test/fixtures/api.json,
 * regenerated by record_fixtures.py). Unknown paths reject the way a dead
 * server would, so tests can exercise the retry path by simply asking for
 * something unrecorded or by calling fail().
 */

import fixturesJson from "./fixtures/api.json";

interface Fixture {
  status: number;
  body: unknown;
}

const FIXTURES = fixturesJson as unknown as Record<string, Fixture>;

export interface FetchStub {
  /** Request paths in arrival order, origin stripped. */
  calls: string[];
  /** Make one path (or "*" for all) reject like a network failure. */
  fail(path: string): void;
  heal(): void;
  restore(): void;
}

export function installFetchStub(): FetchStub {
  const calls: string[] = [];
  const failing = new Set<string>();
  const original = globalThis.fetch;

  globalThis.fetch = (async (input: RequestInfo | URL) => {
    const path = String(input).replace(/^https?:\/\/[^/]+/, "");
    calls.push(path);
    if (failing.has("*") || failing.has(path)) {
      throw new TypeError("fetch failed");
    }
    const fixture = FIXTURES[path];
    if (!fixture) {
      throw new TypeError(`fetch failed: no fixture for ${path}`);
    }
    return new Response(JSON.stringify(fixture.body), {
      status: fixture.status,
      headers: { "Content-Type": "application/json; charset=utf-8" },
    });
  }) as typeof fetch;

  return {
    calls,
    fail: (path) => failing.add(path),
    heal: () => failing.clear(),
    restore: () => {
      globalThis.fetch = original;
    },
  };
}

/** The recorded map document, for tests that drive components directly. */
export function fixtureBody<T>(path: string): T {
  const fixture = FIXTURES[path];
  if (!fixture) throw new Error(`no fixture for ${path}`);
  return JSON.parse(JSON.stringify(fixture.body)) as T;
}
