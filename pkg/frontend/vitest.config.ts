import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // The smoke suite boots the recognition bridge in a child process.
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
