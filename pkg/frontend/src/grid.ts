// DOM rendering of the world grid and the steered triangle.

import type { SessionDescriptor } from "./api.js";

const TRIANGLE_ROTATION: Record<string, number> = {
  U: 0,
  R: 90,
  D: 180,
  L: 270,
};

export function renderGrid(
  container: HTMLElement,
  descriptor: SessionDescriptor,
  position: [number, number],
  lastAction: string,
): void {
  container.innerHTML = "";
  container.classList.add("grid");
  container.style.gridTemplateColumns = `repeat(${descriptor.cols}, var(--cell))`;
  for (let r = 0; r < descriptor.rows; r++) {
    for (let c = 0; c < descriptor.cols; c++) {
      const cell = document.createElement("div");
      cell.className = `cell ${descriptor.cells[r][c]}`;
      cell.dataset.pos = `${r},${c}`;
      if (r === position[0] && c === position[1]) {
        const triangle = document.createElement("span");
        triangle.className = "triangle";
        triangle.textContent = "▲";
        const deg = TRIANGLE_ROTATION[lastAction] ?? 0;
        triangle.style.transform = `rotate(${deg}deg)`;
        cell.appendChild(triangle);
      }
      container.appendChild(cell);
    }
  }
}
