import { ApiClient } from './api.js';
import { Application } from './app.js';

const root = document.getElementById('app');
if (root) {
  void new Application(new ApiClient()).boot(root);
}
