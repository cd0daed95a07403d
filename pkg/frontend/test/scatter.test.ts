import { beforeEach, describe, expect, it } from "vitest";

import { isIdentity } from "../src/geometry.js";
import { Scatter, type ScatterHandlers } from "../src/scatter.js";
import type { MapDocument } from "../src/types.js";

function doc(): MapDocument {
  return {
    version: 1,
    word: { key: "w", pos: "X", freq: 9 },
    axes: [1, 2],
    n_axes: 3,
    singular_values: [0.9, 0.5, 0.1],
    inertia_total: 1.07,
    inertia_share: [0.62, 0.3, 0.08],
    capped: false,
    points: [
      { clique: 0, x: -1.0, y: 0.2, size: 3, members: [["a", "X"], ["b", "X"], ["c", "X"]] },
      { clique: 1, x: -0.8, y: -0.1, size: 2, members: [["a", "X"], ["d", "X"]] },
      { clique: 2, x: 1.2, y: 0.05, size: 2, members: [["e", "X"], ["f", "X"]] },
    ],
    labels: [
      { key: "a", pos: "X", x: -0.9, y: 0.1, freq: 7 },
      { key: "b", pos: "X", x: -1.1, y: 0.3, freq: 4 },
      { key: "e", pos: "X", x: 1.1, y: 0.0, freq: 5 },
      { key: "f", pos: "X", x: 1.3, y: 0.1, freq: 2 },
    ],
    clusters: [
      { id: 0, cliques: [0, 1], label: [["a", "X"], ["b", "X"], ["d", "X"]] },
      { id: 1, cliques: [2], label: [["e", "X"], ["f", "X"]] },
    ],
  };
}

interface Calls {
  cliques: number[];
  clusters: number[];
  pivots: string[];
}

function mount(): { scatter: Scatter; host: HTMLElement; calls: Calls } {
  const container = document.createElement("div");
  document.body.appendChild(container);
  const calls: Calls = { cliques: [], clusters: [], pivots: [] };
  const handlers: ScatterHandlers = {
    onSelectClique: (id) => calls.cliques.push(id),
    onSelectCluster: (id) => calls.clusters.push(id),
    onPivot: (key, pos) => calls.pivots.push(`${key}/${pos}`),
  };
  const scatter = new Scatter(container, handlers, { width: 600, height: 400 });
  return { scatter, host: scatter.element, calls };
}

function click(el: Element): void {
  el.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

function mouse(el: Element, type: string, x: number, y: number): void {
  el.dispatchEvent(new MouseEvent(type, { clientX: x, clientY: y, bubbles: true }));
}

function wheel(el: Element, deltaY: number): void {
  let ev: Event;
  try {
    ev = new WheelEvent("wheel", { deltaY, clientX: 100, clientY: 80, cancelable: true });
  } catch {
    ev = new Event("wheel", { cancelable: true });
    Object.assign(ev, { deltaY, clientX: 100, clientY: 80 });
  }
  el.dispatchEvent(ev);
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("rendering", () => {
  it("draws a circle per clique, labels, and hulls for multi-clique clusters", () => {
    const { scatter, host } = mount();
    scatter.setDocument(doc());
    expect(host.querySelectorAll("circle")).toHaveLength(3);
    expect(host.querySelectorAll("text.map-label")).toHaveLength(4);
    // cluster 0 spans two points (a segment), cluster 1 is a singleton
    const hulls = host.querySelectorAll(".hull");
    expect(hulls).toHaveLength(1);
    expect(hulls[0].tagName.toLowerCase()).toBe("polyline");
    expect(hulls[0].getAttribute("data-cluster")).toBe("0");
  });

  it("labels the axes with their inertia shares, verbatim from the document", () => {
    const { scatter, host } = mount();
    scatter.setDocument(doc());
    const captions = Array.from(host.querySelectorAll(".axis-caption"), (c) => c.textContent);
    expect(captions).toContain("axis 1 · 62.0% of inertia");
    expect(captions).toContain("axis 2 · 30.0% of inertia");
  });

  it("draws a polygon once a cluster has three spread points", () => {
    const { scatter, host } = mount();
    const d = doc();
    d.clusters = [{ id: 0, cliques: [0, 1, 2], label: [["a", "X"]] }];
    scatter.setDocument(d);
    expect(host.querySelector(".hull")?.tagName.toLowerCase()).toBe("polygon");
  });

  it("marks the selected point", () => {
    const { scatter, host } = mount();
    scatter.setDocument(doc());
    scatter.setSelection({ kind: "clique", id: 1 });
    const selected = host.querySelector("circle.selected");
    expect(selected?.getAttribute("data-clique")).toBe("1");
  });

  it("hides hulls on request", () => {
    const { scatter, host } = mount();
    scatter.setDocument(doc());
    scatter.setShowHulls(false);
    expect(host.querySelectorAll(".hull")).toHaveLength(0);
  });

  it("keeps degenerate coordinates finite", () => {
    const { scatter, host } = mount();
    const d = doc();
    d.points = d.points.map((p) => ({ ...p, x: 0.5, y: 0.5 }));
    d.labels = d.labels.map((l) => ({ ...l, x: 0.5, y: 0.5 }));
    scatter.setDocument(d);
    for (const circle of Array.from(host.querySelectorAll("circle"))) {
      expect(Number.isFinite(Number(circle.getAttribute("cx")))).toBe(true);
      expect(Number.isFinite(Number(circle.getAttribute("cy")))).toBe(true);
    }
  });

  it("replaces the plot with an explanatory notice on demand", () => {
    const { scatter, host } = mount();
    scatter.setDocument(doc());
    scatter.showNotice("cannot be mapped: only 1 cliques of size >= 2", "zukol");
    expect(host.querySelector("svg")).toBeNull();
    expect(host.querySelector(".notice strong")?.textContent).toBe("zukol");
    expect(host.textContent).toContain("only 1 cliques of size >= 2");
  });
});

describe("interaction", () => {
  it("clicking a point, hull, or label reaches the right handler", () => {
    const { scatter, host, calls } = mount();
    scatter.setDocument(doc());
    click(host.querySelector('circle[data-clique="1"]')!);
    click(host.querySelector('.hull[data-cluster="0"]')!);
    click(host.querySelector('text[data-key="e"]')!);
    expect(calls).toEqual({ cliques: [1], clusters: [0], pivots: ["e/X"] });
  });

  it("wheel zooms, and reset restores the identity viewport", () => {
    const { scatter, host } = mount();
    scatter.setDocument(doc());
    const svg = host.querySelector("svg")!;
    const before = host.querySelector('circle[data-clique="0"]')!.getAttribute("cx");

    wheel(svg, -120);
    expect(scatter.viewTransform.k).toBeGreaterThan(1);
    const during = host.querySelector('circle[data-clique="0"]')!.getAttribute("cx");
    expect(during).not.toBe(before);

    scatter.resetView();
    expect(isIdentity(scatter.viewTransform)).toBe(true);
    expect(host.querySelector('circle[data-clique="0"]')!.getAttribute("cx")).toBe(before);
  });

  it("dragging pans without counting as a click", () => {
    const { scatter, host, calls } = mount();
    scatter.setDocument(doc());
    const svg = host.querySelector("svg")!;

    mouse(svg, "mousedown", 100, 100);
    mouse(svg, "mousemove", 130, 120);
    mouse(svg, "mouseup", 130, 120);
    expect(scatter.viewTransform.x).toBe(30);
    expect(scatter.viewTransform.y).toBe(20);

    // the click that ends a drag selects nothing
    click(host.querySelector('circle[data-clique="0"]')!);
    expect(calls.cliques).toEqual([]);

    // a clean press-and-release re-arms clicking
    mouse(svg, "mousedown", 5, 5);
    mouse(svg, "mouseup", 5, 5);
    click(host.querySelector('circle[data-clique="0"]')!);
    expect(calls.cliques).toEqual([0]);
  });

  it("zooming in reveals more labels on crowded maps", () => {
    const { scatter, host } = mount();
    const d = doc();
    // 30 labels, frequencies descending so the ranking is stable
    d.labels = Array.from({ length: 30 }, (_, i) => ({
      key: `w${i}`,
      pos: "X",
      x: (i % 6) - 3,
      y: Math.floor(i / 6) - 2,
      freq: 30 - i,
    }));
    scatter.setDocument(d);
    const lowZoom = host.querySelectorAll("text.map-label").length;
    const svg = host.querySelector("svg")!;
    wheel(svg, -600);
    wheel(svg, -600);
    const highZoom = host.querySelectorAll("text.map-label").length;
    expect(lowZoom).toBe(15);
    expect(highZoom).toBe(30);
    // the survivors at low zoom are the top-frequency labels
    scatter.resetView();
    const kept = Array.from(host.querySelectorAll("text.map-label"), (t) =>
      t.getAttribute("data-key"),
    );
    expect(kept).toContain("w0");
    expect(kept).not.toContain("w29");
  });
});
