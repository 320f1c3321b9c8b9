// Chart rendering: the agent/device bar pair, the posterior time series and
// the per-goal series. Displayed numbers are the server's values, fixed to
// three decimals.
export const DISPLAY_DECIMALS = 3;
const GOAL_COLORS = {
    red: "#d43d3d",
    green: "#3dae4e",
    blue: "#3d6fd4",
    magenta: "#c43dc4",
};
export function formatPosterior(p) {
    return p.toFixed(DISPLAY_DECIMALS);
}
export function renderBars(container, posteriorDev, posteriorAgt) {
    container.innerHTML = "";
    const pairs = [
        ["device", posteriorDev, "bar-device"],
        ["agent", posteriorAgt, "bar-agent"],
    ];
    for (const [label, value, cls] of pairs) {
        const wrap = document.createElement("div");
        wrap.className = "bar-wrap";
        const bar = document.createElement("div");
        bar.className = `bar ${cls}`;
        bar.style.height = `${Math.round(value * 100)}%`;
        const text = document.createElement("span");
        text.className = `bar-value ${cls}-value`;
        text.textContent = formatPosterior(value);
        const caption = document.createElement("span");
        caption.className = "bar-label";
        caption.textContent = label;
        wrap.append(text, bar, caption);
        container.appendChild(wrap);
    }
}
function polyline(values, width, height) {
    if (values.length === 0)
        return "";
    const step = values.length > 1 ? width / (values.length - 1) : 0;
    return values
        .map((v, i) => `${(i * step).toFixed(1)},${(height - v * height).toFixed(1)}`)
        .join(" ");
}
function svgChart(series, width = 420, height = 120) {
    const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    svg.setAttribute("class", "chart");
    const mid = document.createElementNS("http://www.w3.org/2000/svg", "line");
    mid.setAttribute("x1", "0");
    mid.setAttribute("x2", String(width));
    mid.setAttribute("y1", String(height / 2));
    mid.setAttribute("y2", String(height / 2));
    mid.setAttribute("class", "midline");
    svg.appendChild(mid);
    for (const { color, values, cls } of series) {
        const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
        line.setAttribute("points", polyline(values, width, height));
        line.setAttribute("fill", "none");
        line.setAttribute("stroke", color);
        line.setAttribute("stroke-width", "2");
        line.setAttribute("class", cls);
        line.setAttribute("data-points", String(values.length));
        svg.appendChild(line);
    }
    return svg;
}
export function renderPosteriorSeries(container, agent) {
    container.innerHTML = "";
    container.appendChild(svgChart([{ color: "#2a7a2a", values: agent, cls: "series-agent" }]));
}
export function renderGoalSeries(container, history) {
    container.innerHTML = "";
    const goals = history.length > 0 ? Object.keys(history[0]) : [];
    const series = goals.map((g) => ({
        color: GOAL_COLORS[g] ?? "#777",
        values: history.map((row) => row[g]),
        cls: `series-goal-${g}`,
    }));
    container.appendChild(svgChart(series));
}
