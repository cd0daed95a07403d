/**
 * Interactive semantic map: cliques as points at their row coordinates,
 * contexonym labels at their column coordinates, cluster hulls behind them.
 *
 * Labels are first-class interactive elements: clicking one pivots to that
 * word's own map, which is how a reader walks the corpus sense by sense.
 * Points and hulls select; the panel beside the plot shows the evidence.
 */

import {
  IDENTITY,
  type Transform,
  apply,
  convexHull,
  isIdentity,
  panBy,
  visibleLabelCount,
  zoomAt,
} from "./geometry.js";
import type { MapDocument, MapPoint } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** Categorical colors, reused modulo when a map has more clusters. */
const PALETTE = [
  "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee",
  "#aa3377", "#bbbbbb", "#994455", "#997700", "#004488",
];

const MARGIN = 44;
const LABEL_FONT_PX = 12;
const POINT_RADIUS_BASE = 5;
const POINT_RADIUS_PER_MEMBER = 2;
/** Wheel delta to zoom factor; one notch of 120 is about x1.27. */
const WHEEL_GAIN = 0.002;
/** Mouse travel in px below which a drag still counts as a click. */
const CLICK_SLOP = 4;

export type Selection =
  | { kind: "clique"; id: number }
  | { kind: "cluster"; id: number }
  | null;

export interface ScatterHandlers {
  onSelectClique: (id: number) => void;
  onSelectCluster: (id: number) => void;
  onPivot: (key: string, pos: string) => void;
}

export interface ScatterOptions {
  width?: number;
  height?: number;
}

interface Fit {
  sx: (x: number) => number;
  sy: (y: number) => number;
}

function pct(share: number | undefined): string {
  return `${((share ?? 0) * 100).toFixed(1)}%`;
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

export class Scatter {
  private readonly host: HTMLElement;
  private readonly handlers: ScatterHandlers;
  private readonly width: number;
  private readonly height: number;

  private doc: MapDocument | null = null;
  private selection: Selection = null;
  private transform: Transform = IDENTITY;
  private showHulls = true;

  private svg: SVGSVGElement | null = null;
  private dragFrom: { x: number; y: number } | null = null;
  private dragDistance = 0;
  /** Set at mouseup after a real drag so the trailing click does not select. */
  private suppressClick = false;

  constructor(container: HTMLElement, handlers: ScatterHandlers, options: ScatterOptions = {}) {
    this.host = document.createElement("div");
    this.host.className = "plot";
    container.appendChild(this.host);
    this.handlers = handlers;
    this.width = options.width ?? 880;
    this.height = options.height ?? 560;
    this.showNotice("No map loaded yet.");
  }

  get viewTransform(): Transform {
    return this.transform;
  }

  get element(): HTMLElement {
    return this.host;
  }

  /** Replace the document; the viewport resets because coordinates changed. */
  setDocument(doc: MapDocument): void {
    this.doc = doc;
    this.transform = IDENTITY;
    this.render();
  }

  setSelection(selection: Selection): void {
    this.selection = selection;
    if (this.doc) this.render();
  }

  setShowHulls(on: boolean): void {
    this.showHulls = on;
    if (this.doc) this.render();
  }

  resetView(): void {
    if (isIdentity(this.transform)) return;
    this.transform = IDENTITY;
    if (this.doc) this.render();
  }

  /** Replace the plot with an explanatory panel (unknown or unmappable word). */
  showNotice(text: string, word?: string): void {
    this.doc = null;
    this.svg = null;
    this.host.replaceChildren();
    const div = document.createElement("div");
    div.className = "notice";
    if (word) {
      const strong = document.createElement("strong");
      strong.textContent = word;
      div.appendChild(strong);
      div.appendChild(document.createTextNode(` ${text}`));
    } else {
      div.textContent = text;
    }
    this.host.appendChild(div);
  }

  /** Data to screen before the user transform; margins keep glyphs inside. */
  private fit(doc: MapDocument): Fit {
    const xs: number[] = [];
    const ys: number[] = [];
    for (const p of doc.points) {
      xs.push(p.x);
      ys.push(p.y);
    }
    for (const l of doc.labels) {
      xs.push(l.x);
      ys.push(l.y);
    }
    let xMin = Math.min(...xs);
    let xMax = Math.max(...xs);
    let yMin = Math.min(...ys);
    let yMax = Math.max(...ys);
    // a degenerate axis still needs a finite scale
    if (xMax - xMin < 1e-12) {
      xMin -= 1;
      xMax += 1;
    }
    if (yMax - yMin < 1e-12) {
      yMin -= 1;
      yMax += 1;
    }
    const mx = (this.width - 2 * MARGIN) / (xMax - xMin);
    const my = (this.height - 2 * MARGIN) / (yMax - yMin);
    return {
      sx: (x) => MARGIN + (x - xMin) * mx,
      // screen y grows downward
      sy: (y) => this.height - MARGIN - (y - yMin) * my,
    };
  }

  private place(fit: Fit, x: number, y: number): [number, number] {
    return apply(this.transform, fit.sx(x), fit.sy(y));
  }

  /** One svg per lifetime keeps viewport listeners alive across renders. */
  private ensureSvg(): SVGSVGElement {
    if (this.svg) return this.svg;
    const svg = svgEl("svg");
    svg.setAttribute("width", String(this.width));
    svg.setAttribute("height", String(this.height));
    svg.setAttribute("viewBox", `0 0 ${this.width} ${this.height}`);
    this.attachViewportHandlers(svg);
    this.host.replaceChildren(svg);
    this.svg = svg;
    return svg;
  }

  private render(): void {
    const doc = this.doc;
    if (!doc) return;
    const svg = this.ensureSvg();
    while (svg.firstChild) svg.removeChild(svg.firstChild);

    const fit = this.fit(doc);
    this.renderOrigin(svg, fit);
    if (this.showHulls) this.renderHulls(svg, doc, fit);
    this.renderLabels(svg, doc, fit);
    this.renderPoints(svg, doc, fit);
    this.renderCaptions(svg, doc);
  }

  private clusterOf(doc: MapDocument): Map<number, number> {
    const of = new Map<number, number>();
    for (const c of doc.clusters) {
      for (const q of c.cliques) of.set(q, c.id);
    }
    return of;
  }

  private renderOrigin(svg: SVGSVGElement, fit: Fit): void {
    const [ox, oy] = this.place(fit, 0, 0);
    for (const horizontal of [true, false]) {
      const line = svgEl("line");
      if (horizontal) {
        line.setAttribute("x1", "0");
        line.setAttribute("x2", String(this.width));
        line.setAttribute("y1", String(oy));
        line.setAttribute("y2", String(oy));
      } else {
        line.setAttribute("x1", String(ox));
        line.setAttribute("x2", String(ox));
        line.setAttribute("y1", "0");
        line.setAttribute("y2", String(this.height));
      }
      line.setAttribute("stroke", "#e3e5ea");
      line.setAttribute("stroke-dasharray", "4 4");
      svg.appendChild(line);
    }
  }

  private renderHulls(svg: SVGSVGElement, doc: MapDocument, fit: Fit): void {
    const byId = new Map<number, MapPoint>(doc.points.map((p) => [p.clique, p]));
    for (const cluster of doc.clusters) {
      const pts = cluster.cliques
        .map((q) => byId.get(q))
        .filter((p): p is MapPoint => p !== undefined)
        .map((p) => this.place(fit, p.x, p.y));
      if (pts.length < 2) continue;

      const hull = convexHull(pts);
      const shape = hull.length >= 3 ? svgEl("polygon") : svgEl("polyline");
      shape.setAttribute("points", hull.map(([x, y]) => `${x},${y}`).join(" "));
      const color = PALETTE[cluster.id % PALETTE.length];
      shape.setAttribute("fill", hull.length >= 3 ? color : "none");
      shape.setAttribute("fill-opacity", "0.12");
      shape.setAttribute("stroke", color);
      shape.setAttribute("stroke-width", "1.5");
      const selected = this.selection?.kind === "cluster" && this.selection.id === cluster.id;
      shape.setAttribute("class", selected ? "hull selected" : "hull");
      shape.setAttribute("data-cluster", String(cluster.id));
      shape.addEventListener("click", () => {
        if (!this.suppressClick) this.handlers.onSelectCluster(cluster.id);
      });
      svg.appendChild(shape);
    }
  }

  private renderLabels(svg: SVGSVGElement, doc: MapDocument, fit: Fit): void {
    const ranked = [...doc.labels].sort((a, b) => b.freq - a.freq || a.key.localeCompare(b.key));
    const keep = visibleLabelCount(ranked.length, this.transform.k);
    for (const label of ranked.slice(0, keep)) {
      const [x, y] = this.place(fit, label.x, label.y);
      const text = svgEl("text");
      text.setAttribute("x", String(x));
      text.setAttribute("y", String(y - 8));
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("font-size", String(LABEL_FONT_PX));
      text.setAttribute("class", "map-label");
      text.setAttribute("data-key", label.key);
      text.setAttribute("data-pos", label.pos);
      text.textContent = label.key;
      const title = svgEl("title");
      title.textContent = `${label.key} (${label.pos}), frequency ${label.freq}; click to open its map`;
      text.appendChild(title);
      text.addEventListener("click", () => {
        if (!this.suppressClick) this.handlers.onPivot(label.key, label.pos);
      });
      svg.appendChild(text);
    }
  }

  private renderPoints(svg: SVGSVGElement, doc: MapDocument, fit: Fit): void {
    const clusterOf = this.clusterOf(doc);
    for (const point of doc.points) {
      const [x, y] = this.place(fit, point.x, point.y);
      const circle = svgEl("circle");
      circle.setAttribute("cx", String(x));
      circle.setAttribute("cy", String(y));
      circle.setAttribute(
        "r",
        String(POINT_RADIUS_BASE + POINT_RADIUS_PER_MEMBER * Math.sqrt(point.size)),
      );
      const cluster = clusterOf.get(point.clique);
      circle.setAttribute("fill", PALETTE[(cluster ?? 0) % PALETTE.length]);
      const selected = this.selection?.kind === "clique" && this.selection.id === point.clique;
      circle.setAttribute("class", selected ? "point selected" : "point");
      circle.setAttribute("data-clique", String(point.clique));
      const title = svgEl("title");
      title.textContent = `clique ${point.clique}: ${point.members.map(([k]) => k).join(", ")}`;
      circle.appendChild(title);
      circle.addEventListener("click", () => {
        if (!this.suppressClick) this.handlers.onSelectClique(point.clique);
      });
      svg.appendChild(circle);
    }
  }

  private renderCaptions(svg: SVGSVGElement, doc: MapDocument): void {
    const [k1, k2] = doc.axes;
    const captions: Array<[string, number, number]> = [
      [
        `axis ${k1} · ${pct(doc.inertia_share[k1 - 1])} of inertia`,
        this.width - MARGIN,
        this.height - 10,
      ],
      [`axis ${k2} · ${pct(doc.inertia_share[k2 - 1])} of inertia`, MARGIN, 16],
    ];
    for (const [wording, x, y] of captions) {
      const text = svgEl("text");
      text.setAttribute("x", String(x));
      text.setAttribute("y", String(y));
      text.setAttribute("text-anchor", x > this.width / 2 ? "end" : "start");
      text.setAttribute("class", "axis-caption");
      text.textContent = wording;
      svg.appendChild(text);
    }
  }

  private attachViewportHandlers(svg: SVGSVGElement): void {
    svg.addEventListener("wheel", (e: WheelEvent) => {
      e.preventDefault();
      const rect = svg.getBoundingClientRect();
      const factor = Math.exp(-(e.deltaY || 0) * WHEEL_GAIN);
      this.transform = zoomAt(
        this.transform,
        (e.clientX || 0) - rect.left,
        (e.clientY || 0) - rect.top,
        factor,
      );
      this.render();
    });
    svg.addEventListener("mousedown", (e: MouseEvent) => {
      this.dragFrom = { x: e.clientX, y: e.clientY };
      this.dragDistance = 0;
      this.suppressClick = false;
      svg.classList.add("dragging");
    });
    svg.addEventListener("mousemove", (e: MouseEvent) => {
      if (!this.dragFrom) return;
      const dx = e.clientX - this.dragFrom.x;
      const dy = e.clientY - this.dragFrom.y;
      this.dragFrom = { x: e.clientX, y: e.clientY };
      this.dragDistance += Math.abs(dx) + Math.abs(dy);
      this.transform = panBy(this.transform, dx, dy);
      this.render();
    });
    const endDrag = () => {
      if (!this.dragFrom) return;
      this.dragFrom = null;
      this.suppressClick = this.dragDistance >= CLICK_SLOP;
      svg.classList.remove("dragging");
    };
    svg.addEventListener("mouseup", endDrag);
    svg.addEventListener("mouseleave", endDrag);
  }
}
