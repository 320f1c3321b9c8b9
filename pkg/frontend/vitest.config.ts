import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    // the console is served by the scoring service itself, so requests are
    // same-origin; give the test window the service's origin
    environmentOptions: {
      happyDOM: { url: "http://127.0.0.1:18731" },
    },
    include: ["test/**/*.test.ts"],
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
