/** Browser controller: owns the view state, fetches, re-renders, and wires
 * the handlers. The only state-mutating calls it makes are feedback POSTs
 * and alert acks. */

import { ApiClient } from "./api.js";
import { alertsBadge, renderAlerts, renderReview, renderReviewList } from "./render.js";
import {
  currentReviewId,
  feedbackPhase,
  initialState,
  nextReview,
  nextTree,
  prevReview,
  prevTree,
  selectFeature,
  toggleCollapsed,
  toggleTheme,
  withAlertCount,
  withTreeCount,
  type ViewState,
} from "./state.js";
import type { Alert, ExplanationPayload } from "./types.js";

export class DashboardApp {
  state: ViewState = initialState();
  payload: ExplanationPayload | null = null;
  alerts: Alert[] = [];

  constructor(private client: ApiClient) {}

  async start(): Promise<void> {
    await this.refreshList({});
    await this.refreshAlerts();
    this.renderChrome();
    await this.openCurrent();
  }

  async refreshList(params: { query?: string; from?: number; to?: number }): Promise<void> {
    const page = await this.client.reviews({ ...params, page: 0, page_size: 50 });
    this.state = { ...this.state, reviewIds: page.reviews.map((r) => r.event_id), reviewIndex: 0 };
    const list = document.getElementById("review-list");
    if (list) list.innerHTML = renderReviewList(page);
    list?.querySelectorAll(".review-row").forEach((row) => {
      row.addEventListener("click", () => {
        const id = (row as HTMLElement).dataset.eventId;
        const index = this.state.reviewIds.indexOf(id ?? "");
        if (index >= 0) {
          this.state = { ...this.state, reviewIndex: index, feedback: "idle", collapsed: new Set() };
          void this.openCurrent();
        }
      });
    });
  }

  async refreshAlerts(): Promise<void> {
    this.alerts = (await this.client.alerts()).alerts;
    this.state = withAlertCount(this.state, this.alerts.filter((a) => !a.acknowledged).length);
    const badge = document.getElementById("alerts-badge");
    if (badge) badge.innerHTML = alertsBadge(this.state.alertCount);
    const panel = document.getElementById("alerts-panel");
    if (panel) {
      panel.innerHTML = renderAlerts(this.alerts);
      panel.querySelectorAll(".ack-btn").forEach((btn) => {
        btn.addEventListener("click", async () => {
          await this.client.acknowledgeAlert(Number((btn as HTMLElement).dataset.alertId));
          await this.refreshAlerts();
        });
      });
    }
  }

  async openCurrent(): Promise<void> {
    const id = currentReviewId(this.state);
    if (!id) return;
    try {
      this.payload = await this.client.explanation(id);
    } catch {
      const main = document.getElementById("review-main");
      if (main) main.innerHTML = `<div class="retry-banner">fetch failed — <button id="retry">retry</button></div>`;
      document.getElementById("retry")?.addEventListener("click", () => void this.openCurrent());
      return;
    }
    this.state = withTreeCount(this.state, this.payload.trees.length);
    const record = (await this.client.review(id)) as { feedback: unknown };
    if (record.feedback) this.state = feedbackPhase(this.state, "done");
    this.renderMain();
  }

  renderMain(): void {
    if (!this.payload) return;
    const main = document.getElementById("review-main");
    if (!main) return;
    main.innerHTML = renderReview(this.payload, this.state);

    document.getElementById("tree-prev")?.addEventListener("click", () => {
      this.state = prevTree(this.state);
      this.renderMain();
    });
    document.getElementById("tree-next")?.addEventListener("click", () => {
      this.state = nextTree(this.state);
      this.renderMain();
    });
    const select = document.getElementById("feature-select") as HTMLSelectElement | null;
    select?.addEventListener("change", () => {
      this.state = selectFeature(this.state, Number(select.value));
      this.renderMain();
    });
    main.querySelectorAll(".split-node").forEach((g) => {
      g.addEventListener("click", () => {
        this.state = toggleCollapsed(this.state, Number((g as HTMLElement).dataset.nodeId));
        this.renderMain();
      });
    });
    main.querySelectorAll(".collapsed-node").forEach((g) => {
      g.addEventListener("click", () => {
        this.state = toggleCollapsed(this.state, Number((g as HTMLElement).dataset.nodeId));
        this.renderMain();
      });
    });
    document.getElementById("feedback-correct")?.addEventListener("click", () => void this.sendFeedback(true));
    document.getElementById("feedback-incorrect")?.addEventListener("click", () => void this.sendFeedback(false));
  }

  async sendFeedback(correct: boolean): Promise<void> {
    const id = currentReviewId(this.state);
    if (!id || this.state.feedback !== "idle") return;
    this.state = feedbackPhase(this.state, "pending");
    this.renderMain();
    const outcome = await this.client.submitFeedback(id, correct);
    this.state = feedbackPhase(this.state, outcome === "conflict" ? "conflict" : "done");
    this.renderMain();
  }

  renderChrome(): void {
    document.getElementById("theme-toggle")?.addEventListener("click", () => {
      this.state = toggleTheme(this.state);
      document.body.className = `theme-${this.state.theme}`;
    });
    document.getElementById("review-prev")?.addEventListener("click", () => {
      this.state = prevReview(this.state);
      void this.openCurrent();
    });
    document.getElementById("review-next")?.addEventListener("click", () => {
      this.state = nextReview(this.state);
      void this.openCurrent();
    });
    const searchText = document.getElementById("search-text") as HTMLInputElement | null;
    const searchFrom = document.getElementById("search-from") as HTMLInputElement | null;
    const searchTo = document.getElementById("search-to") as HTMLInputElement | null;
    document.getElementById("search-btn")?.addEventListener("click", () => {
      void this.refreshList({
        query: searchText?.value || undefined,
        from: searchFrom?.value ? Date.parse(searchFrom.value) / 1000 : undefined,
        to: searchTo?.value ? Date.parse(searchTo.value) / 1000 : undefined,
      }).then(() => this.openCurrent());
    });
    const exportLink = document.getElementById("export-link") as HTMLAnchorElement | null;
    if (exportLink) exportLink.href = this.client.exportUrl();
  }
}
