/**
 * The concordance pane: the sentences behind a selected sense, with the
 * headword highlighted and each clique member clickable as a pivot.
 */

import type { ContextRow, ContextsDocument, UnitRef } from "./types.js";

/** Inflection slack: a token still counts as the headword with up to this
    many trailing letters beyond the key (trottoir / trottoirs). */
const HEADWORD_SUFFIX_SLACK = 3;

export interface TextSegment {
  text: string;
  hit: boolean;
}

/**
 * Split a sentence into plain and highlighted segments. A token is a hit
 * when it case-insensitively equals the key or extends it by at most
 * HEADWORD_SUFFIX_SLACK letters. Keys are lemmas, so surface forms that
 * share no prefix with them simply go unhighlighted.
 */
export function highlightHeadword(text: string, key: string): TextSegment[] {
  const target = key.toLowerCase();
  if (text === "") return [];
  if (target === "") return [{ text, hit: false }];
  const segments: TextSegment[] = [];
  let plain = "";
  for (const piece of text.split(/(\p{L}+)/u)) {
    if (piece === "") continue;
    const lower = piece.toLowerCase();
    const hit =
      lower.startsWith(target) && piece.length <= key.length + HEADWORD_SUFFIX_SLACK;
    if (hit) {
      if (plain) segments.push({ text: plain, hit: false });
      plain = "";
      segments.push({ text: piece, hit: true });
    } else {
      plain += piece;
    }
  }
  if (plain) segments.push({ text: plain, hit: false });
  return segments;
}

/** Merge context lists for a multi-clique selection: deduplicate by
    occurrence id, order by it. */
export function unionContexts(docs: ContextsDocument[]): ContextRow[] {
  const seen = new Map<number, ContextRow>();
  for (const doc of docs) {
    for (const row of doc.contexts) {
      if (!seen.has(row.ctx_id)) seen.set(row.ctx_id, row);
    }
  }
  return Array.from(seen.values()).sort((a, b) => a.ctx_id - b.ctx_id);
}

export type PivotHandler = (key: string, pos: string) => void;

export class ContextPanel {
  private readonly el: HTMLElement;
  private readonly onPivot: PivotHandler;

  constructor(container: HTMLElement, onPivot: PivotHandler) {
    this.el = document.createElement("aside");
    this.el.className = "contexts";
    this.onPivot = onPivot;
    container.appendChild(this.el);
    this.showMessage("Search for a word, then click a point to read its contexts.");
  }

  /** Panel markup, for tests that compare two navigation paths. */
  get html(): string {
    return this.el.innerHTML;
  }

  get element(): HTMLElement {
    return this.el;
  }

  showMessage(text: string, kind: "notice" | "error" = "notice"): void {
    this.el.replaceChildren();
    const p = document.createElement("p");
    p.className = kind === "error" ? "notice error" : "notice";
    p.textContent = text;
    this.el.appendChild(p);
  }

  showContexts(title: string, headword: string, members: UnitRef[], rows: ContextRow[]): void {
    this.el.replaceChildren();

    const h = document.createElement("h2");
    h.textContent = `${title} · ${rows.length} context${rows.length === 1 ? "" : "s"}`;
    this.el.appendChild(h);

    if (members.length > 0) {
      const strip = document.createElement("div");
      strip.className = "members";
      for (const [key, pos] of members) {
        const chip = document.createElement("button");
        chip.type = "button";
        chip.textContent = key;
        chip.title = `open the map of ${key} (${pos})`;
        chip.dataset.key = key;
        chip.dataset.pos = pos;
        chip.addEventListener("click", () => this.onPivot(key, pos));
        strip.appendChild(chip);
      }
      this.el.appendChild(strip);
    }

    const list = document.createElement("ol");
    for (const row of rows) {
      const li = document.createElement("li");
      const span = document.createElement("span");
      span.className = "text";
      for (const seg of highlightHeadword(row.text, headword)) {
        if (seg.hit) {
          const mark = document.createElement("mark");
          mark.textContent = seg.text;
          span.appendChild(mark);
        } else {
          span.appendChild(document.createTextNode(seg.text));
        }
      }
      const doc = document.createElement("span");
      doc.className = "doc";
      doc.textContent = row.doc_id;
      li.appendChild(span);
      li.appendChild(doc);
      list.appendChild(li);
    }
    this.el.appendChild(list);
  }
}
