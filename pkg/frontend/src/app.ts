import { ApiClient, ApiError } from './api.js';
import { applyValidationReport, collectDocument, isDirty, renderForm } from './form.js';
import { renderDiff, renderHistory, restoreAction } from './history.js';
import type { EntityDocument, FormSchema, Vocabulary } from './types.js';
import { localName } from './types.js';

const USER_KEY = 'semcurate.user';

export class Application {
  private schema: FormSchema = {};
  private vocabulary: Vocabulary = { categories: {} };
  private container!: HTMLElement;
  private currentDoc: EntityDocument | null = null;
  private currentForm: HTMLFormElement | null = null;

  constructor(private api: ApiClient) {}

  async boot(container: HTMLElement): Promise<void> {
    this.container = container;
    [this.schema, this.vocabulary] = await Promise.all([
      this.api.schema(),
      this.api.vocabulary(),
    ]);
    this.renderShell();
  }

  private banner(text: string, tone: 'error' | 'info' = 'info'): void {
    const banner = this.container.querySelector('.banner')!;
    banner.textContent = text;
    banner.className = `banner banner-${tone}`;
  }

  private renderShell(): void {
    this.container.innerHTML = `
      <header class="topbar">
        <h1>semcurate</h1>
        <span class="banner"></span>
        <div class="session"></div>
      </header>
      <div class="layout">
        <aside class="sidebar">
          <h2>Entities</h2>
          <div class="new-entity">
            <select class="type-select"></select>
            <button type="button" class="new-button">New</button>
          </div>
          <div class="search-box">
            <input type="search" class="search-input" placeholder="Search titles and keywords" />
            <button type="button" class="search-button">Search</button>
          </div>
          <ul class="search-results"></ul>
        </aside>
        <main class="editor"></main>
        <aside class="inspector"></aside>
      </div>
    `;

    const typeSelect = this.container.querySelector<HTMLSelectElement>('.type-select')!;
    for (const classIri of Object.keys(this.schema).sort()) {
      const option = document.createElement('option');
      option.value = classIri;
      option.textContent = localName(classIri);
      typeSelect.appendChild(option);
    }

    this.renderSession();

    this.container.querySelector('.new-button')!.addEventListener('click', () => {
      this.openNew(typeSelect.value);
    });
    const runSearch = () => void this.runSearch();
    this.container.querySelector('.search-button')!.addEventListener('click', runSearch);
    this.container
      .querySelector<HTMLInputElement>('.search-input')!
      .addEventListener('keydown', (event) => {
        if (event.key === 'Enter') runSearch();
      });
    void this.runSearch();
  }

  private renderSession(): void {
    const session = this.container.querySelector<HTMLElement>('.session')!;
    const user = window.localStorage.getItem(USER_KEY);
    if (user) {
      session.innerHTML = '';
      const name = document.createElement('span');
      name.className = 'session-user';
      name.textContent = user;
      const logout = document.createElement('button');
      logout.type = 'button';
      logout.textContent = 'Log out';
      logout.addEventListener('click', () => {
        void this.api.logout().finally(() => {
          window.localStorage.removeItem(USER_KEY);
          this.renderSession();
        });
      });
      session.append(name, logout);
    } else {
      session.innerHTML = '';
      const input = document.createElement('input');
      input.placeholder = 'stub user (e.g. alice)';
      input.className = 'login-user';
      const button = document.createElement('button');
      button.type = 'button';
      button.textContent = 'Log in';
      button.addEventListener('click', () => {
        if (!input.value) return;
        window.localStorage.setItem(USER_KEY, input.value);
        window.location.assign(this.api.loginUrl(input.value));
      });
      session.append(input, button);
    }
  }

  private async runSearch(): Promise<void> {
    const query = this.container.querySelector<HTMLInputElement>('.search-input')!.value;
    const { results } = await this.api.search(undefined, query || undefined);
    const list = this.container.querySelector<HTMLElement>('.search-results')!;
    list.innerHTML = '';
    for (const hit of results) {
      const item = document.createElement('li');
      const open = document.createElement('button');
      open.type = 'button';
      open.className = 'result-open';
      open.textContent = `${hit.label} (${hit.type ? localName(hit.type) : '?'})`;
      open.addEventListener('click', () => void this.openEntity(hit.iri));
      item.appendChild(open);
      list.appendChild(item);
    }
    if (results.length === 0) {
      const item = document.createElement('li');
      item.className = 'result-empty';
      item.textContent = 'No entities found';
      list.appendChild(item);
    }
  }

  private openNew(classIri: string): void {
    this.currentDoc = { iri: null, type: classIri, fields: {}, keywords: [] };
    this.renderEditor(classIri, this.currentDoc);
    this.container.querySelector<HTMLElement>('.inspector')!.innerHTML = '';
  }

  private async openEntity(iri: string): Promise<void> {
    try {
      this.currentDoc = await this.api.getEntity(iri);
    } catch (error) {
      this.banner(error instanceof ApiError ? error.message : String(error), 'error');
      return;
    }
    this.renderEditor(this.currentDoc.type!, this.currentDoc);
    await this.refreshHistory(iri);
  }

  private renderEditor(classIri: string, doc: EntityDocument): void {
    const editor = this.container.querySelector<HTMLElement>('.editor')!;
    editor.innerHTML = '';

    const title = document.createElement('h2');
    title.textContent = doc.iri ? `${localName(classIri)} — ${doc.iri}` : `New ${localName(classIri)}`;
    editor.appendChild(title);

    const form = renderForm(classIri, doc, {
      schema: this.schema,
      vocabulary: this.vocabulary,
      searchEntities: async (referencedClass, q) => {
        const { results } = await this.api.search(referencedClass, q || undefined);
        return results;
      },
    });
    this.currentForm = form;
    editor.appendChild(form);

    const actions = document.createElement('div');
    actions.className = 'editor-actions';
    const save = document.createElement('button');
    save.type = 'button';
    save.className = 'save-button';
    save.textContent = 'Save';
    save.addEventListener('click', () => void this.save());
    actions.appendChild(save);
    if (doc.iri) {
      const remove = document.createElement('button');
      remove.type = 'button';
      remove.className = 'delete-button';
      remove.textContent = 'Delete';
      remove.addEventListener('click', () => void this.deleteCurrent());
      actions.appendChild(remove);
    }
    editor.appendChild(actions);
  }

  private async save(): Promise<void> {
    if (!this.currentForm || !this.currentDoc) return;
    const collected = collectDocument(this.currentForm, this.schema);
    if (this.currentDoc.iri && !isDirty(this.currentDoc, collected)) {
      this.banner('No changes to save.');
      return;
    }
    try {
      if (this.currentDoc.iri) {
        await this.api.updateEntity(this.currentDoc.iri, collected);
        this.banner(`Saved ${this.currentDoc.iri}`);
        await this.openEntity(this.currentDoc.iri);
      } else {
        const created = await this.api.createEntity(collected);
        this.banner(`Created ${created.iri}`);
        await this.openEntity(created.iri);
      }
      await this.runSearch();
    } catch (error) {
      if (error instanceof ApiError) {
        if (error.problem.validation) {
          applyValidationReport(this.currentForm, error.problem.validation);
          this.banner('Validation failed; see the marked fields.', 'error');
        } else {
          this.banner(`${error.problem.code}: ${error.problem.message}`, 'error');
        }
      } else {
        this.banner(String(error), 'error');
      }
    }
  }

  private async deleteCurrent(): Promise<void> {
    if (!this.currentDoc?.iri) return;
    if (!window.confirm('Delete this entity? Its history remains restorable.')) return;
    try {
      await this.api.deleteEntity(this.currentDoc.iri);
      this.banner(`Deleted ${this.currentDoc.iri}`);
      this.container.querySelector<HTMLElement>('.editor')!.innerHTML = '';
      await this.refreshHistory(this.currentDoc.iri);
      await this.runSearch();
    } catch (error) {
      this.banner(error instanceof ApiError ? error.message : String(error), 'error');
    }
  }

  private async refreshHistory(iri: string): Promise<void> {
    const inspector = this.container.querySelector<HTMLElement>('.inspector')!;
    let history;
    try {
      history = await this.api.history(iri);
    } catch {
      inspector.innerHTML = '';
      return;
    }
    inspector.innerHTML = '';
    inspector.appendChild(
      renderHistory(history, {
        onDiff: (i, j) => void this.showDiff(iri, i, j),
        onRestore: (n) =>
          void restoreAction(this.api, iri, n, async () => {
            await this.openEntity(iri);
            this.banner(`Restored to snapshot #${n}.`);
          }).catch((error) => {
            this.banner(error instanceof ApiError ? error.message : String(error), 'error');
          }),
      }),
    );
  }

  private async showDiff(iri: string, i: number, j: number): Promise<void> {
    const delta = await this.api.diff(iri, i, j);
    const inspector = this.container.querySelector<HTMLElement>('.inspector')!;
    const existing = inspector.querySelector('.diff-view');
    existing?.remove();
    inspector.appendChild(renderDiff(delta));
  }
}
