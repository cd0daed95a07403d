import { afterEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError, LastWriteGate } from "../src/api.js";

const originalFetch = globalThis.fetch;

afterEach(() => {
  globalThis.fetch = originalFetch;
});

/** Capture request URLs, answering every one with the given response. */
function captureFetch(status = 200, body: unknown = {}): string[] {
  const urls: string[] = [];
  globalThis.fetch = (async (input: RequestInfo | URL) => {
    urls.push(String(input));
    return new Response(JSON.stringify(body), { status });
  }) as typeof fetch;
  return urls;
}

describe("ApiClient", () => {
  it("builds the documented paths, percent-encoding words", async () => {
    const urls = captureFetch();
    const api = new ApiClient("");
    await api.words("ta", 30);
    await api.map("café", 1, 3, "NOUN");
    await api.contexts("a/b", 2);
    await api.manifest();
    expect(urls).toEqual([
      "/api/words?prefix=ta&limit=30",
      "/api/map/caf%C3%A9?k1=1&k2=3&pos=NOUN",
      "/api/contexts/a%2Fb/2",
      "/api/manifest",
    ]);
  });

  it("prefixes an explicit origin and drops its trailing slash", async () => {
    const urls = captureFetch();
    const api = new ApiClient("http://127.0.0.1:8737/");
    await api.manifest();
    expect(urls).toEqual(["http://127.0.0.1:8737/api/manifest"]);
  });

  it("turns non-2xx responses into ApiError with the payload attached", async () => {
    captureFetch(404, { error: "not_mappable", reason: "only 1 cliques of size >= 2" });
    const api = new ApiClient("");
    const err = await api.map("zukol", 1, 2).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    const apiErr = err as ApiError;
    expect(apiErr.status).toBe(404);
    expect(apiErr.body.error).toBe("not_mappable");
    expect(apiErr.message).toBe("only 1 cliques of size >= 2");
  });

  it("lets network failures escape as plain errors", async () => {
    globalThis.fetch = (async () => {
      throw new TypeError("fetch failed");
    }) as typeof fetch;
    const api = new ApiClient("");
    await expect(api.manifest()).rejects.toThrow(TypeError);
  });
});

describe("LastWriteGate", () => {
  it("drops a slow response that an overlapping call overtook", async () => {
    const gate = new LastWriteGate();
    let releaseFirst!: (v: string) => void;
    const first = gate.run(() => new Promise<string>((r) => (releaseFirst = r)));
    const second = gate.run(async () => "second");

    expect(await second).toEqual({ stale: false, value: "second" });
    releaseFirst("first");
    expect(await first).toEqual({ stale: true });
  });

  it("swallows failures of overtaken calls", async () => {
    const gate = new LastWriteGate();
    let failFirst!: (e: Error) => void;
    const first = gate.run(() => new Promise<string>((_, rej) => (failFirst = rej)));
    const second = gate.run(async () => "second");

    expect(await second).toEqual({ stale: false, value: "second" });
    failFirst(new Error("boom"));
    expect(await first).toEqual({ stale: true });
  });

  it("propagates failures of the newest call", async () => {
    const gate = new LastWriteGate();
    await expect(
      gate.run(async () => {
        throw new Error("boom");
      }),
    ).rejects.toThrow("boom");
  });

  it("keeps distinct gates independent", async () => {
    const a = new LastWriteGate();
    const b = new LastWriteGate();
    let releaseA!: (v: number) => void;
    const slowA = a.run(() => new Promise<number>((r) => (releaseA = r)));
    expect(await b.run(async () => 1)).toEqual({ stale: false, value: 1 });
    releaseA(2);
    // nothing newer ran through gate a, so its result still counts
    expect(await slowA).toEqual({ stale: false, value: 2 });
  });
});
