import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    proxy: {
      // during development the engine runs separately: emet serve --port 8017
      "/api": "http://127.0.0.1:8017",
    },
  },
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 60000,
    hookTimeout: 60000,
  },
});
