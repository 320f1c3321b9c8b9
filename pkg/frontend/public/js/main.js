import { ApiClient } from "./api.js";
import { App } from "./app.js";
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing element #${id}`);
    return node;
}
async function boot() {
    const els = {
        grid: el("grid"),
        bars: el("bars"),
        series: el("series"),
        goals: el("goals"),
        status: el("status"),
        error: el("error"),
    };
    const app = new App(new ApiClient(""), els);
    const switching = el("switching");
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
