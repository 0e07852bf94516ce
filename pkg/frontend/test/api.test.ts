/** Contract test against a golden fixture server implementing the service's
 * feedback semantics: first POST succeeds, repeats conflict, and the record
 * shows the feedback on re-fetch. */

import { readFileSync } from "node:fs";
import { createServer, type Server } from "node:http";
import type { AddressInfo } from "node:net";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { feedbackButtons } from "../src/render.js";
import { feedbackPhase, initialState } from "../src/state.js";
import type { ExplanationPayload } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));
const golden: ExplanationPayload = JSON.parse(
  readFileSync(join(here, "golden_payload.json"), "utf-8")
);

interface FixtureRecord {
  event_id: string;
  prediction: { label: string; proba: Record<string, number> };
  feedback: { correct: boolean; ts: number; moderator_id: string | null } | null;
}

function fixtureServer(): Server {
  const records = new Map<string, FixtureRecord>([
    [
      golden.event_id,
      {
        event_id: golden.event_id,
        prediction: { label: golden.label, proba: { spam: 0.75, nonspam: 0.25 } },
        feedback: null,
      },
    ],
  ]);

  return createServer((req, res) => {
    const url = new URL(req.url ?? "/", "http://fixture");
    const send = (status: number, body: unknown) => {
      res.writeHead(status, { "Content-Type": "application/json" });
      res.end(JSON.stringify(body));
    };

    const feedbackMatch = url.pathname.match(/^\/reviews\/([^/]+)\/feedback$/);
    if (req.method === "POST" && feedbackMatch) {
      const record = records.get(decodeURIComponent(feedbackMatch[1]));
      if (!record) return send(404, { detail: "review not found" });
      if (record.feedback !== null) return send(409, { detail: "feedback already recorded" });
      let raw = "";
      req.on("data", (chunk) => (raw += chunk));
      req.on("end", () => {
        const body = JSON.parse(raw) as { correct: boolean; moderator_id?: string | null };
        record.feedback = { correct: body.correct, ts: 1234.0, moderator_id: body.moderator_id ?? null };
        send(200, { event_id: record.event_id, feedback: record.feedback });
      });
      return;
    }

    const explanationMatch = url.pathname.match(/^\/reviews\/([^/]+)\/explanation$/);
    if (req.method === "GET" && explanationMatch) {
      if (!records.has(decodeURIComponent(explanationMatch[1]))) {
        return send(404, { detail: "review not found" });
      }
      return send(200, golden);
    }

    const recordMatch = url.pathname.match(/^\/reviews\/([^/]+)$/);
    if (req.method === "GET" && recordMatch) {
      const record = records.get(decodeURIComponent(recordMatch[1]));
      return record ? send(200, record) : send(404, { detail: "review not found" });
    }

    send(404, { detail: "no route" });
  });
}

let server: Server;
let client: ApiClient;

beforeAll(async () => {
  server = fixtureServer();
  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const { port } = server.address() as AddressInfo;
  client = new ApiClient(`http://127.0.0.1:${port}`);
});

afterAll(() => {
  server.close();
});

describe("feedback round trip against the fixture server", () => {
  it("first POST succeeds, the buttons disable, and re-fetch shows feedback", async () => {
    let state = initialState([golden.event_id], 1);
    expect(feedbackButtons(state)).not.toContain("disabled");

    const outcome = await client.submitFeedback(golden.event_id, false, "mod-7");
    expect(outcome).toBe("ok");
    state = feedbackPhase(state, "done");
    const buttons = feedbackButtons(state);
    expect(buttons).toContain("disabled");
    expect(buttons).toContain("feedback recorded");

    const record = (await client.review(golden.event_id)) as unknown as FixtureRecord;
    expect(record.feedback).not.toBeNull();
    expect(record.feedback!.correct).toBe(false);
    expect(record.feedback!.moderator_id).toBe("mod-7");
  });

  it("a second POST conflicts and the UI shows already-reviewed", async () => {
    const outcome = await client.submitFeedback(golden.event_id, true);
    expect(outcome).toBe("conflict");
    const buttons = feedbackButtons(feedbackPhase(initialState([golden.event_id], 1), "conflict"));
    expect(buttons).toContain("disabled");
    expect(buttons).toContain("already reviewed");
  });

  it("unknown ids report not_found", async () => {
    expect(await client.submitFeedback("ghost", true)).toBe("not_found");
  });

  it("explanation fetch round-trips the golden payload", async () => {
    const payload = await client.explanation(golden.event_id);
    expect(payload.confidence).toBe(0.75);
    expect(payload.features.length).toBe(golden.features.length);
  });
});
