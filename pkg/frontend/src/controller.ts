/** Orchestrates the service client against the console state.
 *
 * At most one mutation is in flight per session: record requests while
 * busy are ignored (the UI disables the buttons too).  A 409 means the
 * local revision went stale; refetch the session and retry exactly once.
 */

import { DetectionApi, ServiceError } from "./api.js";
import {
  ConsoleState,
  initialState,
  withBanner,
  withBusy,
  withCurve,
  withMeasurement,
  withSession,
  withSlider,
} from "./state.js";
import type { Outcome } from "./types.js";

export class ConsoleController {
  state: ConsoleState = initialState();

  constructor(
    private readonly client: DetectionApi,
    private readonly onChange: (state: ConsoleState) => void = () => {},
  ) {}

  private commit(state: ConsoleState): void {
    this.state = state;
    this.onChange(state);
  }

  async loadCurve(snr: number, prior: number, points = 200): Promise<void> {
    try {
      const curve = await this.client.getRoc(snr, prior, points);
      this.commit(withCurve(this.state, curve));
    } catch (err) {
      this.commit(withBanner(this.state, `curve fetch failed: ${describe(err)}`));
    }
  }

  /** Pure client-side: no request is issued on slider movement. */
  moveSlider(threshold: number): void {
    this.commit(withSlider(this.state, threshold));
  }

  async startSession(
    prior: number,
    detector: { pd: number; pfa: number } | { snr: number; threshold: number },
  ): Promise<void> {
    try {
      const session = await this.client.createSession(prior, detector);
      this.commit(withSession(this.state, { ...session, looks: session.looks ?? [] }));
    } catch (err) {
      this.commit(withBanner(this.state, `session create failed: ${describe(err)}`));
    }
  }

  async attachSession(id: string): Promise<void> {
    try {
      const session = await this.client.getSession(id);
      this.commit(withSession(this.state, session));
    } catch (err) {
      this.commit(withBanner(this.state, `session fetch failed: ${describe(err)}`));
    }
  }

  async recordOutcome(outcome: Outcome): Promise<void> {
    const session = this.state.session;
    if (!session || this.state.busy) return;
    this.commit(withBusy(this.state, true));
    try {
      await this.postWithOneRetry(session.id, outcome);
    } finally {
      this.commit(withBusy(this.state, false));
    }
  }

  private async postWithOneRetry(id: string, outcome: Outcome): Promise<void> {
    try {
      const summary = await this.client.postMeasurement(
        id, outcome, this.state.session!.revision,
      );
      this.commit(withMeasurement(this.state, summary));
      return;
    } catch (err) {
      if (!(err instanceof ServiceError) || err.status !== 409) {
        this.commit(withBanner(this.state, `measurement rejected: ${describe(err)}`));
        return;
      }
    }
    // stale revision: refetch, then retry exactly once
    try {
      const fresh = await this.client.getSession(id);
      this.commit(withSession(this.state, fresh));
      const summary = await this.client.postMeasurement(id, outcome, fresh.revision);
      this.commit(withMeasurement(this.state, summary));
    } catch (err) {
      this.commit(withBanner(this.state, `measurement rejected after retry: ${describe(err)}`));
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ServiceError) return `${err.status} ${err.code}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}
