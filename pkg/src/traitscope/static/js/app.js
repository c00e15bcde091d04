// The debugger single-page app: bottom-up and top-down projections of a
// solved inference tree, with shortened types, a hover minibuffer for
// qualified paths, impl-list popups, jump-to-definition, and live reload
// over SSE. All semantic content comes from the HTTP API.
import { UiState } from "./state.js";
import { renderPredicate } from "./typetext.js";
const GLYPHS = { yes: "✓", no: "✗", maybe: "?" };
export class App {
    constructor(root, api) {
        this.root = root;
        this.api = api;
        this.state = new UiState();
        this.document_ = null;
        this.unsubscribe = null;
        root.innerHTML = `
      <header>
        <span class="title">traitscope</span>
        <select id="goal-select"></select>
        <span class="toggles">
          <button id="mode-bottom-up">bottom-up</button>
          <button id="mode-top-down">top-down</button>
          <button id="filter-toggle">showing: failures only</button>
        </span>
      </header>
      <div id="banner" hidden></div>
      <main id="view"></main>
      <aside id="source-panel" hidden></aside>
      <div id="popup" hidden></div>
      <footer id="minibuffer"></footer>
    `;
        this.view = this.q("#view");
        this.banner = this.q("#banner");
        this.minibuffer = this.q("#minibuffer");
        this.popup = this.q("#popup");
        this.sourcePanel = this.q("#source-panel");
        this.goalSelect = this.q("#goal-select");
        this.modeButtons = {
            bottom_up: this.q("#mode-bottom-up"),
            top_down: this.q("#mode-top-down"),
        };
        this.filterButton = this.q("#filter-toggle");
        this.wireEvents();
    }
    q(selector) {
        return this.root.querySelector(selector);
    }
    async init() {
        try {
            const goals = await this.api.goals();
            if (!goals.length) {
                this.showError("no goals in the document");
                return;
            }
            const failing = goals.find((g) => g.result !== "yes");
            this.state.goal = (failing ?? goals[0]).label;
            for (const goal of goals) {
                const option = document.createElement("option");
                option.value = goal.label;
                option.textContent = `${goal.label} (${goal.result})`;
                this.goalSelect.append(option);
            }
            this.goalSelect.value = this.state.goal;
            await this.loadDocument();
            this.unsubscribe = this.api.events(() => void this.refresh());
        }
        catch (err) {
            this.showError(String(err));
        }
    }
    dispose() {
        this.unsubscribe?.();
    }
    async loadDocument() {
        if (!this.state.goal)
            return;
        try {
            this.document_ = await this.api.tree(this.state.goal);
            this.banner.hidden = true;
            this.render();
        }
        catch (err) {
            this.showError(String(err));
        }
    }
    /** Re-solve happened server-side: refetch, keep expansion state. */
    async refresh() {
        await this.loadDocument();
    }
    showError(message) {
        this.banner.hidden = false;
        this.banner.textContent = message;
        this.view.replaceChildren();
    }
    goalDoc() {
        if (!this.document_ || !this.state.goal)
            return null;
        return (this.document_.goals.find((g) => g.label === this.state.goal) ?? null);
    }
    node(id) {
        const goal = this.goalDoc();
        const node = goal?.nodes[String(id)];
        if (!node)
            throw new Error(`node ${id} does not resolve in the document`);
        return node;
    }
    render() {
        const goal = this.goalDoc();
        if (!goal || !this.document_)
            return;
        this.modeButtons.bottom_up.classList.toggle("active", this.state.mode === "bottom_up");
        this.modeButtons.top_down.classList.toggle("active", this.state.mode === "top_down");
        this.filterButton.hidden = this.state.mode !== "top_down";
        this.filterButton.textContent =
            this.state.filter === "failures_only"
                ? "showing: failures only"
                : "showing: all nodes";
        this.view.replaceChildren(this.state.mode === "bottom_up"
            ? this.renderBottomUp(goal)
            : this.renderTopDown(goal));
    }
    renderContext(nodeId) {
        return {
            symbols: this.document_.symbols,
            expansions: this.state.node(nodeId).typeExpansions,
            nodeId,
        };
    }
    nodeRow(id) {
        const node = this.node(id);
        const row = document.createElement("div");
        row.className = `row ${node.kind} res-${node.result}`;
        row.dataset.nodeRow = String(id);
        const glyph = document.createElement("span");
        glyph.className = "glyph";
        glyph.textContent = GLYPHS[node.result];
        row.append(glyph);
        if (node.kind === "goal" && node.predicate) {
            row.append(renderPredicate(node.predicate.structured, this.renderContext(id)));
            if (node.reason?.kind === "overflow" && node.reason.cycle_path) {
                const badge = document.createElement("button");
                badge.className = "cycle-badge";
                badge.dataset.target = String(node.reason.cycle_path[0]);
                badge.textContent = "↺ cycle";
                badge.title = "recursion: jump to the first occurrence";
                row.append(badge);
            }
        }
        else if (node.impl) {
            const impl = document.createElement("span");
            impl.className = "impl-head";
            impl.textContent = node.impl.head_short;
            row.append(impl);
            if (node.impl.span) {
                const jump = document.createElement("button");
                jump.className = "jump";
                jump.dataset.file = node.impl.span.file;
                jump.dataset.line = String(node.impl.span.line_start);
                jump.textContent = "src";
                row.append(jump);
            }
        }
        return row;
    }
    // -- bottom-up
    renderBottomUp(goal) {
        const container = document.createElement("div");
        container.className = "bottom-up";
        const views = this.document_.views[goal.label];
        const entries = views.bottom_up.entries;
        if (!entries.length) {
            const done = document.createElement("p");
            done.className = "placeholder";
            done.textContent = "all goals hold";
            container.append(done);
            return container;
        }
        const list = document.createElement("ul");
        list.className = "entries";
        for (const entry of entries) {
            const item = document.createElement("li");
            item.className = "entry";
            item.append(this.nodeRow(entry.leaf));
            const revealed = this.state.revealed.get(entry.leaf) ?? 0;
            if (entry.ancestor_chain.length) {
                const ancestors = document.createElement("div");
                ancestors.className = "ancestors";
                for (const ancestor of entry.ancestor_chain.slice(0, revealed)) {
                    ancestors.append(this.nodeRow(ancestor));
                }
                item.append(ancestors);
                if (revealed < entry.ancestor_chain.length) {
                    const more = document.createElement("button");
                    more.className = "reveal-parent";
                    more.dataset.leaf = String(entry.leaf);
                    more.dataset.limit = String(entry.ancestor_chain.length);
                    more.textContent = "↑ parent";
                    const all = document.createElement("button");
                    all.className = "reveal-all";
                    all.dataset.leaf = String(entry.leaf);
                    all.dataset.limit = String(entry.ancestor_chain.length);
                    all.textContent = "↑↑ to root";
                    item.append(more, all);
                }
            }
            list.append(item);
        }
        container.append(list);
        return container;
    }
    // -- top-down
    renderTopDown(goal) {
        const container = document.createElement("div");
        container.className = "top-down";
        container.append(this.renderSubtree(goal.root));
        return container;
    }
    visibleChildren(node) {
        if (this.state.filter === "all")
            return node.children;
        return node.children.filter((child) => this.node(child).result !== "yes");
    }
    renderSubtree(id) {
        const node = this.node(id);
        const wrap = document.createElement("div");
        wrap.className = "subtree";
        const row = this.nodeRow(id);
        const children = this.visibleChildren(node);
        if (children.length) {
            const toggle = document.createElement("button");
            toggle.className = "expand-toggle";
            toggle.dataset.node = String(id);
            toggle.textContent = this.state.node(id).expanded ? "▾" : "▸";
            row.prepend(toggle);
        }
        wrap.append(row);
        if (children.length && this.state.node(id).expanded) {
            const nest = document.createElement("div");
            nest.className = "children";
            for (const child of children) {
                nest.append(this.renderSubtree(child));
            }
            wrap.append(nest);
        }
        return wrap;
    }
    // -- interactions
    wireEvents() {
        this.modeButtons.bottom_up.addEventListener("click", () => {
            this.state.mode = "bottom_up";
            this.render();
        });
        this.modeButtons.top_down.addEventListener("click", () => {
            this.state.mode = "top_down";
            this.render();
        });
        this.filterButton.addEventListener("click", () => {
            this.state.filter =
                this.state.filter === "failures_only" ? "all" : "failures_only";
            this.render();
        });
        this.goalSelect.addEventListener("change", () => {
            this.state.goal = this.goalSelect.value;
            void this.loadDocument();
        });
        this.root.addEventListener("mouseover", (event) => {
            const sym = event.target.closest?.(".sym");
            if (sym instanceof HTMLElement && sym.dataset.symbol) {
                const info = this.document_?.symbols[sym.dataset.symbol];
                this.minibuffer.textContent = info ? info.path : "";
            }
        });
        this.root.addEventListener("mouseout", (event) => {
            const sym = event.target.closest?.(".sym");
            if (sym)
                this.minibuffer.textContent = "";
        });
        this.root.addEventListener("click", (event) => {
            const target = event.target;
            const ellipsis = target.closest?.(".ellipsis");
            if (ellipsis instanceof HTMLElement) {
                const nodeId = Number(ellipsis.dataset.node);
                this.state.toggleEllipsis(nodeId, ellipsis.dataset.pos ?? "");
                this.render();
                return;
            }
            const implsBtn = target.closest?.(".impls-btn");
            if (implsBtn instanceof HTMLElement && implsBtn.dataset.trait) {
                void this.showImplList(implsBtn.dataset.trait);
                return;
            }
            const toggle = target.closest?.(".expand-toggle");
            if (toggle instanceof HTMLElement) {
                this.state.toggleExpanded(Number(toggle.dataset.node));
                this.render();
                return;
            }
            const reveal = target.closest?.(".reveal-parent, .reveal-all");
            if (reveal instanceof HTMLElement) {
                const leaf = Number(reveal.dataset.leaf);
                const limit = Number(reveal.dataset.limit);
                if (reveal.classList.contains("reveal-all")) {
                    this.state.revealAll(leaf, limit);
                }
                else {
                    this.state.revealMore(leaf, limit);
                }
                this.render();
                return;
            }
            const badge = target.closest?.(".cycle-badge");
            if (badge instanceof HTMLElement) {
                const first = this.root.querySelector(`[data-node-row="${badge.dataset.target}"]`);
                if (first instanceof HTMLElement) {
                    first.classList.add("flash");
                    first.scrollIntoView?.({ block: "center" });
                }
                return;
            }
            const jump = target.closest?.(".jump");
            if (jump instanceof HTMLElement && jump.dataset.file) {
                void this.jumpToSource(jump.dataset.file, Number(jump.dataset.line));
                return;
            }
            const sym = target.closest?.(".sym");
            if (sym instanceof HTMLElement &&
                sym.dataset.symbol &&
                (event.ctrlKey || event.metaKey)) {
                void this.jumpToDefinition(Number(sym.dataset.symbol));
                return;
            }
            if (!target.closest?.("#popup"))
                this.popup.hidden = true;
        });
    }
    async showImplList(traitPath) {
        try {
            const reply = await this.api.impls(traitPath);
            this.popup.replaceChildren();
            const title = document.createElement("div");
            title.className = "popup-title";
            title.textContent = `impls of ${reply.trait}`;
            this.popup.append(title);
            const list = document.createElement("ul");
            if (!reply.impls.length) {
                const li = document.createElement("li");
                li.className = "no-impls";
                li.textContent = "no implementations";
                list.append(li);
            }
            for (const impl of reply.impls) {
                const li = document.createElement("li");
                li.className = "impl-row";
                li.textContent = `${impl.head_short} `;
                const jump = document.createElement("button");
                jump.className = "jump";
                jump.dataset.file = impl.span.file;
                jump.dataset.line = String(impl.span.line_start);
                jump.textContent = `${impl.span.file}:${impl.span.line_start}`;
                li.append(jump);
                list.append(li);
            }
            this.popup.append(list);
            this.popup.hidden = false;
        }
        catch (err) {
            this.showError(String(err));
        }
    }
    async jumpToDefinition(symbolId) {
        const info = this.document_?.symbols[String(symbolId)];
        if (!info)
            return;
        await this.jumpToSource(info.span.file, info.span.line_start);
    }
    async jumpToSource(file, line) {
        try {
            const reply = await this.api.source(file, line);
            this.sourcePanel.replaceChildren();
            const title = document.createElement("div");
            title.className = "source-title";
            title.textContent = `${reply.file}:${reply.line}`;
            this.sourcePanel.append(title);
            const pre = document.createElement("pre");
            reply.text.split("\n").forEach((text, i) => {
                const lineEl = document.createElement("div");
                lineEl.className = i + 1 === reply.line ? "line target" : "line";
                lineEl.textContent = `${String(i + 1).padStart(3)}  ${text}`;
                pre.append(lineEl);
            });
            this.sourcePanel.append(pre);
            this.sourcePanel.hidden = false;
            this.sourcePanel.querySelector(".target")?.scrollIntoView?.({
                block: "center",
            });
        }
        catch (err) {
            this.showError(String(err));
        }
    }
}
