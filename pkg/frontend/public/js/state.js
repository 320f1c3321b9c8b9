// UI state: the session plus per-step posterior histories. The reducers are
// pure so the chart-length invariant (history length == server t) is easy to
// test without a DOM.
export function initialState() {
    return {
        sessionId: null,
        pending: false,
        t: 0,
        agentHistory: [],
        deviceHistory: [],
        goalHistory: [],
        last: null,
    };
}
export function startSession(state, id, server) {
    return {
        ...initialState(),
        sessionId: id,
        t: server.t,
        last: server,
    };
}
export function applyStep(state, server) {
    return {
        ...state,
        t: server.t,
        agentHistory: [...state.agentHistory, server.posterior_agt],
        deviceHistory: [...state.deviceHistory, server.posterior_dev],
        goalHistory: [...state.goalHistory, server.goal_posteriors],
        last: server,
    };
}
export function applyUndo(state, server) {
    return {
        ...state,
        t: server.t,
        agentHistory: state.agentHistory.slice(0, -1),
        deviceHistory: state.deviceHistory.slice(0, -1),
        goalHistory: state.goalHistory.slice(0, -1),
        last: server,
    };
}
export function applyReset(state, server) {
    return {
        ...state,
        t: server.t,
        agentHistory: [],
        deviceHistory: [],
        goalHistory: [],
        last: server,
    };
}
export function historiesConsistent(state) {
    return (state.agentHistory.length === state.t &&
        state.deviceHistory.length === state.t &&
        state.goalHistory.length === state.t);
}
