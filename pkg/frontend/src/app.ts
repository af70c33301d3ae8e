// The interactive app: renders the served layout on a canvas, hit-tests the
// pointer client-side, and turns gestures into command batches. The service
// stays the single source of truth: after every accepted batch the app
// re-reads the served documents and re-renders from those.

import { Api, ServiceError } from "./api.js";
import { hitTest, sameHit } from "./hittest.js";
import type { Hit } from "./hittest.js";
import { render } from "./render.js";
import {
  dropCommand,
  freshContactId,
  initialState,
  matchesQuery,
  tweenLayout,
  unsortedContacts,
} from "./state.js";
import type { ViewState } from "./state.js";
import type { Command, LayoutDoc } from "./types.js";

const DRAG_THRESHOLD_PX = 4;

export interface AppOptions {
  baseUrl?: string;
  width?: number;
  height?: number;
  focusAnimationMs?: number;
}

export class CheesecakeApp {
  readonly state: ViewState = initialState();
  readonly width: number;
  readonly height: number;

  private readonly api: Api;
  private readonly animMs: number;
  private readonly canvas: HTMLCanvasElement;
  private readonly ctx: CanvasRenderingContext2D;
  private readonly poolList: HTMLUListElement;
  private readonly banner: HTMLElement;
  private queue: Command[][] = [];
  private inFlight = false;
  private pendingLayout = 0;
  private idleWaiters: (() => void)[] = [];
  private lastPointer: { x: number; y: number } | null = null;
  private pressHit: Hit | null = null;

  constructor(root: HTMLElement, options: AppOptions = {}) {
    this.api = new Api(options.baseUrl ?? "");
    this.width = options.width ?? 720;
    this.height = options.height ?? 560;
    this.animMs = options.focusAnimationMs ?? 250;

    root.innerHTML = `
      <header class="bar">
        <h1>cheesecake</h1>
        <input id="search" type="search" placeholder="search contacts" autocomplete="off">
      </header>
      <div id="banner" class="banner" hidden></div>
      <main class="split">
        <canvas id="cake" width="${this.width}" height="${this.height}"></canvas>
        <aside class="panel">
          <form id="add-contact">
            <input id="contact-name" placeholder="new contact name" autocomplete="off" required>
            <button type="submit">add contact</button>
          </form>
          <form id="new-sector">
            <input id="sector-label" placeholder="new sector label" autocomplete="off" required>
            <input id="sector-bands" value="close,distant" autocomplete="off" required>
            <button type="submit">add sector</button>
          </form>
          <h2>not yet sorted</h2>
          <ul id="pool"></ul>
        </aside>
      </main>
    `;
    this.canvas = root.querySelector("#cake")!;
    this.poolList = root.querySelector("#pool")!;
    this.banner = root.querySelector("#banner")!;
    const ctx = this.canvas.getContext("2d");
    if (!ctx) throw new Error("canvas 2d context unavailable");
    this.ctx = ctx;
    this.bindEvents(root);
  }

  async start(): Promise<void> {
    try {
      this.state.model = await this.api.getModel();
      this.state.layout = await this.fetchLayout();
      this.state.offline = false;
    } catch (e) {
      if (e instanceof ServiceError) this.state.error = e.message;
      else this.state.offline = true;
    }
    this.renderAll();
  }

  /** Resolves once nothing is queued, in flight, or animating in. */
  idle(): Promise<void> {
    if (this.settled()) return Promise.resolve();
    return new Promise((resolve) => this.idleWaiters.push(resolve));
  }

  submitBatch(commands: Command[]): void {
    this.queue.push(commands);
    void this.pump();
  }

  // -- command pipeline --------------------------------------------------

  private settled(): boolean {
    return !this.inFlight && this.queue.length === 0 && this.pendingLayout === 0;
  }

  private maybeSettle(): void {
    if (this.settled()) {
      for (const resolve of this.idleWaiters.splice(0)) resolve();
    }
  }

  private async pump(): Promise<void> {
    if (this.inFlight) return;
    const batch = this.queue.shift();
    if (!batch) {
      this.maybeSettle();
      return;
    }
    this.inFlight = true;
    try {
      this.state.model = await this.api.postCommands(batch);
      this.state.error = null;
      this.state.offline = false;
      this.state.layout = await this.fetchLayout();
    } catch (e) {
      if (e instanceof ServiceError) {
        this.state.error = e.message;
        await this.reloadFromService(); // roll back to what the service holds
      } else {
        this.state.offline = true;
      }
    } finally {
      this.inFlight = false;
      this.renderAll();
      void this.pump();
    }
  }

  private async reloadFromService(): Promise<void> {
    try {
      this.state.model = await this.api.getModel();
      this.state.layout = await this.fetchLayout();
      this.state.offline = false;
    } catch {
      this.state.offline = true;
    }
  }

  private fetchLayout(): Promise<LayoutDoc> {
    return this.api.getLayout({
      width: this.width,
      height: this.height,
      focus: this.state.focused,
    });
  }

  // -- events --------------------------------------------------------------

  private bindEvents(root: HTMLElement): void {
    this.canvas.addEventListener("pointerdown", (ev) => this.onCanvasDown(ev as PointerEvent));
    this.canvas.addEventListener("pointermove", (ev) => this.onPointerMove(ev as PointerEvent));
    root.addEventListener("pointermove", (ev) => this.onGlobalMove(ev as PointerEvent));
    root.addEventListener("pointerup", (ev) => this.onPointerUp(ev as PointerEvent));
    this.poolList.addEventListener("pointerdown", (ev) => this.onPoolDown(ev as PointerEvent));

    const search = root.querySelector<HTMLInputElement>("#search")!;
    search.addEventListener("input", () => {
      this.state.query = search.value;
      this.renderAll();
    });

    const addContact = root.querySelector<HTMLFormElement>("#add-contact")!;
    addContact.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const input = root.querySelector<HTMLInputElement>("#contact-name")!;
      const name = input.value.trim();
      if (!name || !this.state.model) return;
      input.value = "";
      this.submitBatch([
        {
          op: "add_contact",
          contact: { id: freshContactId(this.state.model), name, avatar: null },
        },
      ]);
    });

    const newSector = root.querySelector<HTMLFormElement>("#new-sector")!;
    newSector.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const label = root.querySelector<HTMLInputElement>("#sector-label")!;
      const bands = root.querySelector<HTMLInputElement>("#sector-bands")!;
      const subsectors = bands.value.split(",").map((s) => s.trim()).filter(Boolean);
      if (!label.value.trim() || subsectors.length === 0) return;
      this.submitBatch([
        { op: "create_sector", label: label.value.trim(), subsectors },
      ]);
      label.value = "";
    });
  }

  private canvasPoint(ev: PointerEvent): { x: number; y: number } {
    const rect = this.canvas.getBoundingClientRect();
    return { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
  }

  private onCanvasDown(ev: PointerEvent): void {
    if (this.state.offline || !this.state.layout) return;
    const { x, y } = this.canvasPoint(ev);
    const grabbed = this.placementAt(x, y);
    if (grabbed) {
      this.state.drag = { ...grabbed, x, y, started: false };
      this.pressHit = null;
      return;
    }
    this.pressHit = hitTest(this.state.layout, x, y);
  }

  private onPoolDown(ev: PointerEvent): void {
    if (this.state.offline) return;
    const item = (ev.target as HTMLElement).closest<HTMLElement>("[data-contact]");
    if (!item) return;
    const { x, y } = this.canvasPoint(ev);
    this.state.drag = { contact: item.dataset.contact!, from: null, x, y, started: false };
  }

  private onPointerMove(ev: PointerEvent): void {
    if (!this.state.layout || this.state.drag) return;
    const { x, y } = this.canvasPoint(ev);
    this.lastPointer = { x, y };
    const hit = hitTest(this.state.layout, x, y);
    if (!sameHit(hit, this.state.hover)) {
      this.state.hover = hit;
      this.renderCanvas();
    }
  }

  private onGlobalMove(ev: PointerEvent): void {
    const drag = this.state.drag;
    if (!drag) return;
    const { x, y } = this.canvasPoint(ev);
    if (!drag.started && Math.hypot(x - drag.x, y - drag.y) >= DRAG_THRESHOLD_PX) {
      drag.started = true;
    }
    if (drag.started) {
      drag.x = x;
      drag.y = y;
      if (this.state.layout) this.state.hover = hitTest(this.state.layout, x, y);
      this.renderCanvas();
    }
  }

  private onPointerUp(ev: PointerEvent): void {
    const drag = this.state.drag;
    if (drag) {
      this.state.drag = null;
      if (drag.started) {
        this.finishDrag(drag, ev);
        this.renderCanvas();
        return;
      }
      // a press on an avatar that never moved counts as a sector click
      if (this.state.layout) {
        const { x, y } = this.canvasPoint(ev);
        this.toggleFocusAt(hitTest(this.state.layout, x, y));
      }
      return;
    }
    if (this.pressHit) {
      const hit = this.pressHit;
      this.pressHit = null;
      this.toggleFocusAt(hit);
    }
  }

  private finishDrag(drag: NonNullable<ViewState["drag"]>, ev: PointerEvent): void {
    if (!this.state.layout) return;
    const overPool = (ev.target as HTMLElement | null)?.closest?.(".panel") != null;
    let target: Hit | "pool";
    if (overPool) {
      target = "pool";
    } else {
      const { x, y } = this.canvasPoint(ev);
      target = hitTest(this.state.layout, x, y);
    }
    const command = dropCommand(drag, target);
    if (command) this.submitBatch([command]);
    // no command: the ghost simply disappears and the layout re-renders as served
  }

  private toggleFocusAt(hit: Hit): void {
    if (hit.kind !== "cell") return;
    this.state.focused = this.state.focused === hit.sector ? null : hit.sector;
    void this.animateToFetchedLayout();
  }

  private async animateToFetchedLayout(): Promise<void> {
    this.pendingLayout += 1;
    let target: LayoutDoc;
    try {
      target = await this.fetchLayout();
    } catch (e) {
      if (e instanceof ServiceError) this.state.error = e.message;
      else this.state.offline = true;
      this.renderAll();
      this.pendingLayout -= 1;
      this.maybeSettle();
      return;
    }
    const from = this.state.layout;
    if (!from || this.animMs <= 0 || typeof requestAnimationFrame === "undefined") {
      this.state.layout = target;
      this.refreshHover();
      this.renderAll();
      this.pendingLayout -= 1;
      this.maybeSettle();
      return;
    }
    const t0 = performance.now();
    const step = (now: number) => {
      const t = Math.min(1, (now - t0) / this.animMs);
      this.state.layout = tweenLayout(from, target, t);
      this.refreshHover();
      this.renderCanvas();
      if (t < 1) {
        requestAnimationFrame(step);
      } else {
        this.pendingLayout -= 1;
        this.maybeSettle();
      }
    };
    requestAnimationFrame(step);
  }

  private placementAt(
    x: number,
    y: number,
  ): { contact: string; from: { sector: string; depth: number } } | null {
    const layout = this.state.layout;
    if (!layout) return null;
    for (const arc of layout.sectors) {
      for (const band of arc.bands) {
        for (const p of band.placements) {
          if (Math.hypot(p.x - x, p.y - y) <= p.r) {
            return { contact: p.contact, from: { sector: arc.sector, depth: band.depth } };
          }
        }
      }
    }
    return null;
  }

  private refreshHover(): void {
    if (this.lastPointer && this.state.layout && !this.state.drag) {
      this.state.hover = hitTest(this.state.layout, this.lastPointer.x, this.lastPointer.y);
    }
  }

  // -- rendering -----------------------------------------------------------

  private renderCanvas(): void {
    render(this.ctx, this.state, this.width, this.height);
  }

  private renderPool(): void {
    const model = this.state.model;
    this.poolList.textContent = "";
    if (!model) return;
    for (const contact of unsortedContacts(model)) {
      if (this.state.query && !matchesQuery(contact, this.state.query)) continue;
      const li = document.createElement("li");
      li.dataset.contact = contact.id;
      li.textContent = contact.name;
      li.title = `drag ${contact.name} onto the cake`;
      this.poolList.appendChild(li);
    }
  }

  private renderBanner(): void {
    if (this.state.offline) {
      this.banner.textContent = "service unreachable: read-only view";
      this.banner.hidden = false;
    } else if (this.state.error) {
      this.banner.textContent = this.state.error;
      this.banner.hidden = false;
    } else {
      this.banner.hidden = true;
    }
  }

  private renderAll(): void {
    this.renderBanner();
    this.renderPool();
    this.renderCanvas();
  }
}
