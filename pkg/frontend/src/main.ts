import { CheesecakeApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = new CheesecakeApp(root, {
    width: Math.max(480, Math.min(window.innerWidth - 280, 900)),
    height: Math.max(420, window.innerHeight - 120),
  });
  void app.start();
}
