// The steering console: one keypress, one step request, one chart point.
// Input is locked while a request is in flight, so the rendered state always
// matches the server's step counter exactly.
import { ApiError } from "./api.js";
import { applyReset, applyStep, applyUndo, initialState, startSession, } from "./state.js";
import { renderGrid } from "./grid.js";
import { renderBars, renderGoalSeries, renderPosteriorSeries, } from "./charts.js";
const KEY_TO_ACTION = {
    ArrowUp: "U",
    ArrowDown: "D",
    ArrowLeft: "L",
    ArrowRight: "R",
};
export class App {
    constructor(api, els) {
        this.api = api;
        this.els = els;
        this.state = initialState();
        this.descriptor = null;
    }
    async start(switching = false) {
        if (this.state.sessionId) {
            await this.api.deleteSession(this.state.sessionId).catch(() => undefined);
        }
        this.descriptor = await this.api.createSession({ switching });
        this.state = startSession(this.state, this.descriptor.id, this.descriptor.state);
        this.render();
    }
    /** Keyboard entry point; resolves once the UI reflects the server state. */
    async handleKey(ev) {
        const action = KEY_TO_ACTION[ev.key];
        if (!action && ev.key !== "Backspace")
            return;
        ev.preventDefault?.();
        const sessionId = this.state.sessionId;
        if (this.state.pending || !sessionId)
            return;
        this.state = { ...this.state, pending: true };
        try {
            if (ev.key === "Backspace") {
                await this.undo();
            }
            else {
                const server = await this.api.step(sessionId, action);
                this.state = applyStep(this.state, server);
            }
            this.clearError();
        }
        catch (err) {
            this.showError(err);
        }
        finally {
            this.state = { ...this.state, pending: false };
            this.render();
        }
    }
    async undo() {
        if (this.state.t === 0)
            return; // nothing to pop; avoid a guaranteed 409
        const server = await this.api.undo(this.state.sessionId);
        this.state = applyUndo(this.state, server);
    }
    async reset() {
        if (!this.state.sessionId)
            return;
        const server = await this.api.reset(this.state.sessionId);
        this.state = applyReset(this.state, server);
        this.render();
    }
    attach(doc) {
        doc.addEventListener("keydown", (ev) => {
            void this.handleKey(ev);
        });
    }
    showError(err) {
        const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
        this.els.error.textContent = message;
        this.els.error.classList.add("visible");
    }
    clearError() {
        this.els.error.textContent = "";
        this.els.error.classList.remove("visible");
    }
    render() {
        const server = this.state.last;
        if (!this.descriptor || !server)
            return;
        renderGrid(this.els.grid, this.descriptor, server.position, server.last_action);
        renderBars(this.els.bars, server.posterior_dev, server.posterior_agt);
        renderPosteriorSeries(this.els.series, this.state.agentHistory);
        renderGoalSeries(this.els.goals, this.state.goalHistory);
        this.els.status.textContent =
            `t=${server.t}  nll_dev=${server.nll_dev.toFixed(2)}  ` +
                `nll_agt=${server.nll_agt.toFixed(2)}`;
    }
}
