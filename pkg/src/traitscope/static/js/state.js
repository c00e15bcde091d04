// View-state store, keyed by node id so it survives document refreshes
// whenever ids persist.
export class UiState {
    constructor() {
        // bottom-up is the initial mode
        this.mode = "bottom_up";
        this.filter = "failures_only";
        this.goal = null;
        this.nodes = new Map();
        /** bottom-up: how many ancestor steps each leaf entry has revealed */
        this.revealed = new Map();
    }
    node(id) {
        let state = this.nodes.get(id);
        if (!state) {
            state = { expanded: false, typeExpansions: new Set() };
            this.nodes.set(id, state);
        }
        return state;
    }
    toggleExpanded(id) {
        const state = this.node(id);
        // collapsing leaves descendant states untouched, so re-expanding
        // restores them
        state.expanded = !state.expanded;
        return state.expanded;
    }
    toggleEllipsis(id, pos) {
        const expansions = this.node(id).typeExpansions;
        if (expansions.has(pos)) {
            expansions.delete(pos);
        }
        else {
            expansions.add(pos);
        }
    }
    revealMore(leaf, limit) {
        const next = Math.min((this.revealed.get(leaf) ?? 0) + 1, limit);
        this.revealed.set(leaf, next);
        return next;
    }
    revealAll(leaf, limit) {
        this.revealed.set(leaf, limit);
    }
}
