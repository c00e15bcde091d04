// View-state store, keyed by node id so it survives document refreshes
// whenever ids persist.

export type ViewMode = "bottom_up" | "top_down";
export type VisibleFilter = "failures_only" | "all";

export interface UiNodeState {
  expanded: boolean;
  typeExpansions: Set<string>;
}

export class UiState {
  // bottom-up is the initial mode
  mode: ViewMode = "bottom_up";
  filter: VisibleFilter = "failures_only";
  goal: string | null = null;
  private nodes = new Map<number, UiNodeState>();
  /** bottom-up: how many ancestor steps each leaf entry has revealed */
  revealed = new Map<number, number>();

  node(id: number): UiNodeState {
    let state = this.nodes.get(id);
    if (!state) {
      state = { expanded: false, typeExpansions: new Set() };
      this.nodes.set(id, state);
    }
    return state;
  }

  toggleExpanded(id: number): boolean {
    const state = this.node(id);
    // collapsing leaves descendant states untouched, so re-expanding
    // restores them
    state.expanded = !state.expanded;
    return state.expanded;
  }

  toggleEllipsis(id: number, pos: string): void {
    const expansions = this.node(id).typeExpansions;
    if (expansions.has(pos)) {
      expansions.delete(pos);
    } else {
      expansions.add(pos);
    }
  }

  revealMore(leaf: number, limit: number): number {
    const next = Math.min((this.revealed.get(leaf) ?? 0) + 1, limit);
    this.revealed.set(leaf, next);
    return next;
  }

  revealAll(leaf: number, limit: number): void {
    this.revealed.set(leaf, limit);
  }
}
