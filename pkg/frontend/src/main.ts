import { HttpApiClient } from './api.js';
import { App } from './app.js';

declare global {
  interface Window {
    REGISTRY_API_BASE?: string;
  }
}

const root = document.getElementById('app');
if (root) {
  const api = new HttpApiClient(window.REGISTRY_API_BASE ?? '');
  const app = new App(root, api);
  void app.init();
}
