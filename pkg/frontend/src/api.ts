import { ROUTES, RouteName, fillTemplate } from './routes.js';
import type {
  EntityDocument,
  FormSchema,
  HistoryResponse,
  DeltaJson,
  ProblemJson,
  SearchHit,
  Vocabulary,
  WriteResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(public status: number, public problem: ProblemJson) {
    super(problem.message || `request failed with ${status}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin client over the documented routes; every call is routed through the
 * ROUTES table so the contract test can prove no other endpoint is used. */
export class ApiClient {
  constructor(
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
    private base = '',
  ) {}

  private async request<T>(
    name: RouteName,
    params: Record<string, string | number> = {},
    options: { query?: Record<string, string | undefined>; body?: unknown } = {},
  ): Promise<T> {
    const route = ROUTES[name];
    let url = this.base + fillTemplate(route.template, params);
    const query = Object.entries(options.query ?? {}).filter(([, v]) => v !== undefined && v !== '');
    if (query.length > 0) {
      url += '?' + new URLSearchParams(query as [string, string][]).toString();
    }
    const init: RequestInit = { method: route.method, credentials: 'same-origin' };
    if (options.body !== undefined) {
      init.body = JSON.stringify(options.body);
      init.headers = { 'Content-Type': 'application/json' };
    }
    const response = await this.fetchFn(url, init);
    if (response.status === 204) {
      return undefined as T;
    }
    const text = await response.text();
    const data = text ? JSON.parse(text) : null;
    if (!response.ok) {
      throw new ApiError(response.status, data ?? { code: 'error', message: response.statusText });
    }
    return data as T;
  }

  schema(): Promise<FormSchema> {
    return this.request('schema');
  }

  vocabulary(): Promise<Vocabulary> {
    return this.request('vocabulary');
  }

  search(type?: string, q?: string): Promise<{ results: SearchHit[] }> {
    return this.request('search', {}, { query: { type, q } });
  }

  getEntity(id: string): Promise<EntityDocument> {
    return this.request('get', { id });
  }

  createEntity(doc: EntityDocument, description?: string): Promise<WriteResponse> {
    return this.request('create', {}, { body: { ...doc, description } });
  }

  updateEntity(id: string, doc: EntityDocument, description?: string): Promise<WriteResponse> {
    return this.request('update', { id }, { body: { ...doc, description } });
  }

  deleteEntity(id: string): Promise<WriteResponse> {
    return this.request('remove', { id });
  }

  history(id: string): Promise<HistoryResponse> {
    return this.request('history', { id });
  }

  version(id: string, n: number): Promise<EntityDocument> {
    return this.request('version', { id, n });
  }

  diff(id: string, i: number, j: number): Promise<DeltaJson & { entity: string }> {
    return this.request('diff', { id, i, j });
  }

  restore(id: string, n: number): Promise<WriteResponse> {
    return this.request('restore', { id, n });
  }

  /** Login is a browser-level redirect: the server drives the code flow and
   * sets the session cookie. */
  loginUrl(user: string): string {
    return this.base + ROUTES.login.template + '?' + new URLSearchParams({ user }).toString();
  }

  logout(): Promise<void> {
    return this.request('logout');
  }
}
