import { ApiClient } from "./api.js";
import { DashboardApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const base = root.dataset.api ?? window.location.origin;
  const app = new DashboardApp(new ApiClient(base));
  void app.start();
}
