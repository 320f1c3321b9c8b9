import { ApiClient } from "./api.js";
import { App, AppElements } from "./app.js";

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

async function boot(): Promise<void> {
  const els: AppElements = {
    grid: el("grid"),
    bars: el("bars"),
    series: el("series"),
    goals: el("goals"),
    status: el("status"),
    error: el("error"),
  };
  const app = new App(new ApiClient(""), els);
  const switching = el("switching") as HTMLInputElement;
  switching.addEventListener("change", () => {
    void app.start(switching.checked);
  });
  el("reset").addEventListener("click", () => {
    void app.reset();
  });
  app.attach(document);
  await app.start(switching.checked);
}

window.addEventListener("DOMContentLoaded", () => {
  void boot();
});
