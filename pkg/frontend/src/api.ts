/** Thin HTTP client for the detection service. */

import type { Outcome, RocPoint, SessionSummary } from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

async function parseJson(response: Response): Promise<unknown> {
  const text = await response.text();
  try {
    return JSON.parse(text);
  } catch {
    throw new ServiceError(response.status, "bad_payload", `unparseable response: ${text.slice(0, 200)}`);
  }
}

async function expectOk<T>(response: Response): Promise<T> {
  const body = await parseJson(response);
  if (!response.ok) {
    const err = body as { code?: string; message?: string };
    throw new ServiceError(response.status, err.code ?? "error", err.message ?? `HTTP ${response.status}`);
  }
  return body as T;
}

/** What the console needs from the service; ServiceClient is the real
 * implementation, tests substitute fakes. */
export interface DetectionApi {
  getRoc(snr: number, prior: number, points: number): Promise<RocPoint[]>;
  createSession(
    prior: number,
    detector: { pd: number; pfa: number } | { snr: number; threshold: number },
  ): Promise<SessionSummary>;
  getSession(id: string): Promise<SessionSummary>;
  postMeasurement(id: string, outcome: Outcome, expectedRevision: number): Promise<SessionSummary>;
}

export class ServiceClient implements DetectionApi {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  async health(): Promise<void> {
    await expectOk(await this.fetchImpl(`${this.baseUrl}/healthz`));
  }

  async getRoc(snr: number, prior: number, points: number): Promise<RocPoint[]> {
    const url = `${this.baseUrl}/roc?snr=${snr}&prior=${prior}&points=${points}`;
    return expectOk<RocPoint[]>(await this.fetchImpl(url));
  }

  async createSession(
    prior: number,
    detector: { pd: number; pfa: number } | { snr: number; threshold: number },
  ): Promise<SessionSummary> {
    const body: Record<string, unknown> = { prior };
    if ("pd" in detector) {
      body.detector = detector;
    } else {
      body.model = detector;
    }
    const response = await this.fetchImpl(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return expectOk<SessionSummary>(response);
  }

  async getSession(id: string): Promise<SessionSummary> {
    return expectOk<SessionSummary>(await this.fetchImpl(`${this.baseUrl}/sessions/${id}`));
  }

  async postMeasurement(
    id: string,
    outcome: Outcome,
    expectedRevision: number,
  ): Promise<SessionSummary> {
    const response = await this.fetchImpl(`${this.baseUrl}/sessions/${id}/measurements`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ outcome, expected_revision: expectedRevision }),
    });
    return expectOk<SessionSummary>(response);
  }
}
