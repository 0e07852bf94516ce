/** Thin client over the service HTTP/JSON API. */

import type { Alert, ExplanationPayload, ReviewPage } from "./types.js";

export type FeedbackOutcome = "ok" | "conflict" | "not_found";

export interface ReviewQuery {
  query?: string;
  from?: number;
  to?: number;
  page?: number;
  page_size?: number;
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: typeof fetch = fetch
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`);
    if (!resp.ok) throw new Error(`GET ${path} -> ${resp.status}`);
    return (await resp.json()) as T;
  }

  reviews(params: ReviewQuery = {}): Promise<ReviewPage> {
    const search = new URLSearchParams();
    for (const [key, value] of Object.entries(params)) {
      if (value !== undefined && value !== "") search.set(key, String(value));
    }
    const qs = search.toString();
    return this.getJson<ReviewPage>(`/reviews${qs ? `?${qs}` : ""}`);
  }

  review(id: string): Promise<Record<string, unknown>> {
    return this.getJson(`/reviews/${encodeURIComponent(id)}`);
  }

  explanation(id: string): Promise<ExplanationPayload> {
    return this.getJson<ExplanationPayload>(`/reviews/${encodeURIComponent(id)}/explanation`);
  }

  async submitFeedback(id: string, correct: boolean, moderatorId?: string): Promise<FeedbackOutcome> {
    const resp = await this.fetchImpl(`${this.baseUrl}/reviews/${encodeURIComponent(id)}/feedback`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ correct, moderator_id: moderatorId ?? null }),
    });
    if (resp.status === 409) return "conflict";
    if (resp.status === 404) return "not_found";
    if (!resp.ok) throw new Error(`feedback -> ${resp.status}`);
    return "ok";
  }

  alerts(): Promise<{ alerts: Alert[] }> {
    return this.getJson(`/alerts`);
  }

  async acknowledgeAlert(id: number): Promise<void> {
    const resp = await this.fetchImpl(`${this.baseUrl}/alerts/${id}/ack`, { method: "POST" });
    if (!resp.ok) throw new Error(`ack -> ${resp.status}`);
  }

  metrics(): Promise<Record<string, unknown>> {
    return this.getJson(`/metrics`);
  }

  /** The cloud-save button maps to a plain export download. */
  exportUrl(): string {
    return `${this.baseUrl}/export`;
  }
}
