export * from "./wire.js";
export * from "./apiClient.js";
export * from "./targetMap.js";
export * from "./capture.js";
export * from "./recorder.js";
export * from "./triage.js";
export * from "./feedback.js";
export * from "./tank.js";
export * from "./demo.js";
