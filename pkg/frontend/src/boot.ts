/** Page entry point: mounts the app against the local service. */

import { bootstrap } from "./main.js";

const base =
  new URLSearchParams(window.location.search).get("service") ??
  "http://127.0.0.1:8155";

bootstrap(document, base)
  .then((app) => {
    window.app = app;
  })
  .catch((exc) => {
    const banner = document.getElementById("network-banner");
    if (banner !== null) {
      banner.textContent = `service unreachable: ${exc}`;
      banner.hidden = false;
    }
  });
