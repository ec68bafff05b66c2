import { createApp } from "./main.js";

const root = document.getElementById("app");
if (root) {
  createApp(root);
}
