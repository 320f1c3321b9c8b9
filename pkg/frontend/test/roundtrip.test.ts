// Scripted browser round trip against the real HTTP service: steer ten steps
// toward the magenta balloon, check the displayed agent bar against the
// report endpoint, then undo once and check the chart shrank.

import { ChildProcess, spawn } from "node:child_process";
import { existsSync } from "node:fs";
import { dirname, join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App, AppElements } from "../src/app.js";
import { DISPLAY_DECIMALS } from "../src/charts.js";

const PORT = 18731;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(timeoutMs = 25000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE}/api/session`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: "{}",
      });
      if (res.ok) {
        const doc = (await res.json()) as { id: string };
        await fetch(`${BASE}/api/session/${doc.id}`, { method: "DELETE" });
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("service did not come up");
}

function scaffold(): AppElements {
  document.body.innerHTML = `
    <div id="grid"></div>
    <div id="bars"></div>
    <div id="series"></div>
    <div id="goals"></div>
    <div id="status"></div>
    <div id="error"></div>
  `;
  const get = (id: string) => document.getElementById(id) as HTMLElement;
  return {
    grid: get("grid"),
    bars: get("bars"),
    series: get("series"),
    goals: get("goals"),
    status: get("status"),
    error: get("error"),
  };
}

function key(name: string): KeyboardEvent {
  return new KeyboardEvent("keydown", { key: name, cancelable: true });
}

function repoRoot(): string {
  let dir = process.cwd();
  while (!existsSync(join(dir, "pyproject.toml"))) {
    const parent = dirname(dir);
    if (parent === dir) throw new Error("could not locate the package root");
    dir = parent;
  }
  return resolve(dir);
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "agency.cli", "serve", "--port", String(PORT), "--host", "127.0.0.1"],
    { cwd: repoRoot(), stdio: "ignore" },
  );
  await waitForServer();
});

afterAll(() => {
  server?.kill();
});

describe("steering console round trip", () => {
  it("ten steps toward magenta: bar shows the report posterior; undo pops a point", async () => {
    const els = scaffold();
    const app = new App(new ApiClient(BASE), els);
    await app.start(false);

    for (let i = 0; i < 10; i++) {
      await app.handleKey(key("ArrowDown"));
    }
    expect(app.state.t).toBe(10);
    expect(app.state.agentHistory).toHaveLength(10);

    // triangle rendered at the steered position, pointing down
    const occupied = els.grid.querySelector(".triangle") as HTMLElement;
    expect(occupied).not.toBeNull();
    expect(occupied.parentElement!.getAttribute("data-pos")).toBe("13,5");
    expect(occupied.style.transform).toBe("rotate(180deg)");

    // all four balloons are visible as colored cells
    for (const color of ["red", "green", "blue", "magenta"]) {
      expect(els.grid.querySelector(`.cell.${color}`)).not.toBeNull();
    }

    const barText = els.bars.querySelector(".bar-agent-value")!.textContent;
    const devText = els.bars.querySelector(".bar-device-value")!.textContent;
    const report = await new ApiClient(BASE).report(app.state.sessionId!);
    expect(report.steps).toBe(10);
    expect(barText).toBe(report.posterior_agt.toFixed(DISPLAY_DECIMALS));
    // ten greedy presses toward magenta: the agent bar tops the device bar
    expect(Number(barText)).toBeGreaterThan(Number(devText));

    // the displayed value is the server's verbatim step value as well
    expect(app.state.last!.posterior_agt).toBeCloseTo(report.posterior_agt, 10);

    const pointsBefore = els.series
      .querySelector(".series-agent")!
      .getAttribute("data-points");
    expect(pointsBefore).toBe("10");

    await app.handleKey(key("Backspace"));
    expect(app.state.t).toBe(9);
    const pointsAfter = els.series
      .querySelector(".series-agent")!
      .getAttribute("data-points");
    expect(pointsAfter).toBe("9");

    const reportAfter = await new ApiClient(BASE).report(app.state.sessionId!);
    expect(reportAfter.steps).toBe(9);
  });

  it("keyboard lockout: a second key during flight is ignored", async () => {
    const els = scaffold();
    const app = new App(new ApiClient(BASE), els);
    await app.start(false);
    const first = app.handleKey(key("ArrowRight"));
    const second = app.handleKey(key("ArrowRight"));
    await Promise.all([first, second]);
    expect(app.state.t).toBe(1); // the in-flight lock swallowed the second
  });

  it("switching checkbox maps to session creation config", async () => {
    const els = scaffold();
    const app = new App(new ApiClient(BASE), els);
    await app.start(true);
    expect(app.descriptor!.switching).toBe(true);
  });

  it("error banner appears on a failing request", async () => {
    const els = scaffold();
    const app = new App(new ApiClient(BASE), els);
    await app.start(false);
    // sabotage the session id so the next step 404s
    app.state = { ...app.state, sessionId: "bogus" };
    await app.handleKey(key("ArrowUp"));
    expect(els.error.classList.contains("visible")).toBe(true);
    expect(els.error.textContent).toContain("unknown_session");
  });
});
