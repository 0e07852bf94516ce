/** JSON schemas shared with the service API (see the backend README). */

export type Severity = "green" | "yellow" | "red" | "grey";

export interface PathStep {
  feature: string;
  threshold: number;
  direction: "greater" | "less_equal";
  node_id: number;
}

export interface DecisionPath {
  tree_id: number;
  steps: PathStep[];
  leaf_counts: Record<string, number>;
}

export interface SplitNode {
  id: number;
  kind: "split";
  feature: string;
  threshold: number;
  left: number;
  right: number;
}

export interface LeafNode {
  id: number;
  kind: "leaf";
  counts: Record<string, number>;
}

export type TreeNode = SplitNode | LeafNode;

export interface TreeJson {
  root: number;
  nodes: TreeNode[];
}

export interface FeatureCard {
  feature: string;
  count: number;
  value: number;
  severity: Severity;
}

export interface DriftInfo {
  sample_index: number;
  p_value: number;
  aad: number;
  drift: boolean;
  w_after: number;
  action: string;
}

export interface ExplanationPayload {
  event_id: string;
  label: string;
  confidence: number;
  features: FeatureCard[];
  paths: DecisionPath[];
  trees: TreeJson[];
  description: string;
  drift: DriftInfo | null;
  description_fallback: boolean;
}

export interface ReviewSummary {
  event_id: string;
  sample_index: number;
  timestamp: number;
  text: string;
  predicted: string;
  confidence: number;
  label: string | null;
  has_feedback: boolean;
}

export interface ReviewPage {
  total: number;
  page: number;
  page_size: number;
  reviews: ReviewSummary[];
}

export interface Alert {
  alert_id: number;
  report: DriftInfo;
  event_id: string;
  acknowledged: boolean;
}

export interface FeedbackRecord {
  correct: boolean;
  ts: number;
  moderator_id: string | null;
}
