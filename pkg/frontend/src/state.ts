/** Pure view-state transitions; every navigation clamps at its bounds. */

export type Theme = "dark" | "clear";
export type FeedbackPhase = "idle" | "pending" | "done" | "conflict";

export interface ViewState {
  reviewIds: string[];
  reviewIndex: number;
  selectedFeature: number;
  treeIndex: number;
  treeCount: number;
  theme: Theme;
  alertCount: number;
  collapsed: ReadonlySet<number>;
  feedback: FeedbackPhase;
}

export function initialState(reviewIds: string[] = [], treeCount: number = 1): ViewState {
  return {
    reviewIds,
    reviewIndex: 0,
    selectedFeature: 0,
    treeIndex: 0,
    treeCount: Math.max(1, treeCount),
    theme: "clear",
    alertCount: 0,
    collapsed: new Set(),
    feedback: "idle",
  };
}

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(Math.max(value, lo), hi);
}

/** Entering another review resets per-review bits (selection, collapse, feedback). */
function atReview(state: ViewState, index: number): ViewState {
  const next = clamp(index, 0, Math.max(0, state.reviewIds.length - 1));
  if (next === state.reviewIndex) return state;
  return {
    ...state,
    reviewIndex: next,
    selectedFeature: 0,
    treeIndex: 0,
    collapsed: new Set(),
    feedback: "idle",
  };
}

export function nextReview(state: ViewState): ViewState {
  return atReview(state, state.reviewIndex + 1);
}

export function prevReview(state: ViewState): ViewState {
  return atReview(state, state.reviewIndex - 1);
}

export function currentReviewId(state: ViewState): string | null {
  return state.reviewIds[state.reviewIndex] ?? null;
}

export function nextTree(state: ViewState): ViewState {
  return { ...state, treeIndex: clamp(state.treeIndex + 1, 0, state.treeCount - 1), collapsed: new Set() };
}

export function prevTree(state: ViewState): ViewState {
  return { ...state, treeIndex: clamp(state.treeIndex - 1, 0, state.treeCount - 1), collapsed: new Set() };
}

export function withTreeCount(state: ViewState, count: number): ViewState {
  const treeCount = Math.max(1, count);
  return { ...state, treeCount, treeIndex: clamp(state.treeIndex, 0, treeCount - 1) };
}

export function selectFeature(state: ViewState, index: number): ViewState {
  return { ...state, selectedFeature: Math.max(0, index) };
}

export function toggleTheme(state: ViewState): ViewState {
  return { ...state, theme: state.theme === "dark" ? "clear" : "dark" };
}

export function withAlertCount(state: ViewState, count: number): ViewState {
  return { ...state, alertCount: Math.max(0, count) };
}

export function toggleCollapsed(state: ViewState, nodeId: number): ViewState {
  const collapsed = new Set(state.collapsed);
  if (collapsed.has(nodeId)) {
    collapsed.delete(nodeId);
  } else {
    collapsed.add(nodeId);
  }
  return { ...state, collapsed };
}

export function feedbackPhase(state: ViewState, phase: FeedbackPhase): ViewState {
  return { ...state, feedback: phase };
}

/** Feedback buttons fire once: anything past idle disables them. */
export function feedbackDisabled(state: ViewState): boolean {
  return state.feedback !== "idle";
}
