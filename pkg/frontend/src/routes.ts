// The documented API surface. Every network call the UI makes goes through
// one of these entries; the contract test enforces it.

export interface RouteDef {
  method: 'GET' | 'POST' | 'PUT' | 'DELETE';
  template: string;
}

export const ROUTES = {
  schema: { method: 'GET', template: '/api/schema' },
  vocabulary: { method: 'GET', template: '/api/vocabulary' },
  search: { method: 'GET', template: '/api/entities' },
  create: { method: 'POST', template: '/api/entities' },
  get: { method: 'GET', template: '/api/entities/{id}' },
  update: { method: 'PUT', template: '/api/entities/{id}' },
  remove: { method: 'DELETE', template: '/api/entities/{id}' },
  history: { method: 'GET', template: '/api/entities/{id}/history' },
  version: { method: 'GET', template: '/api/entities/{id}/version/{n}' },
  diff: { method: 'GET', template: '/api/entities/{id}/diff/{i}/{j}' },
  restore: { method: 'POST', template: '/api/entities/{id}/restore/{n}' },
  login: { method: 'GET', template: '/auth/login' },
  callback: { method: 'GET', template: '/auth/callback' },
  logout: { method: 'POST', template: '/auth/logout' },
} as const satisfies Record<string, RouteDef>;

export type RouteName = keyof typeof ROUTES;

export function fillTemplate(template: string, params: Record<string, string | number>): string {
  return template.replace(/\{(\w+)\}/g, (_match, name: string) => {
    const value = params[name];
    if (value === undefined) {
      throw new Error(`missing path parameter '${name}' for ${template}`);
    }
    return String(value);
  });
}
