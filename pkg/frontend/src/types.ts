/** Shapes served by the detection service.  The console never computes
 * probabilities of its own; every number in these types arrives over HTTP
 * and is displayed verbatim. */

export interface RocPoint {
  threshold: number;
  pfa: number;
  pd: number;
  ppv: number;
}

export interface DetectorSpec {
  pd: number;
  pfa: number;
}

export interface LookRecord {
  outcome: "positive" | "negative";
  detector: DetectorSpec;
  posterior: number;
}

export interface SessionSummary {
  id: string;
  created_at: string;
  prior: number;
  detector: DetectorSpec;
  source: { snr: number; threshold: number } | null;
  revision: number;
  current: number;
  looks?: LookRecord[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
}

export type Outcome = "positive" | "negative";

export interface TrajectoryPoint {
  revision: number;
  posterior: number;
}
