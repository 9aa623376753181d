import type { ApiClient } from './api.js';
import type { DeltaJson, HistoryResponse, SnapshotJson } from './types.js';

export interface HistoryHandlers {
  onDiff: (i: number, j: number) => void;
  onRestore: (n: number) => void;
}

/** Snapshot timeline, newest first. The latest snapshot has no restore
 * button (restoring to it is a no-op the server would 409). */
export function renderHistory(history: HistoryResponse, handlers: HistoryHandlers): HTMLElement {
  const container = document.createElement('section');
  container.className = 'history-panel';

  const heading = document.createElement('h3');
  heading.textContent = history.tombstoned ? 'History (deleted entity)' : 'History';
  container.appendChild(heading);

  const list = document.createElement('ol');
  list.className = 'history-list';
  list.setAttribute('reversed', '');

  const newestFirst = [...history.snapshots].sort((a, b) => b.index - a.index);
  const latest = newestFirst[0]?.index ?? 0;

  for (const snapshot of newestFirst) {
    list.appendChild(renderSnapshotItem(snapshot, latest, handlers));
  }
  container.appendChild(list);

  if (history.snapshots.length >= 2) {
    container.appendChild(renderDiffControls(history, handlers));
  }
  return container;
}

function renderSnapshotItem(
  snapshot: SnapshotJson,
  latest: number,
  handlers: HistoryHandlers,
): HTMLElement {
  const item = document.createElement('li');
  item.className = 'history-item';
  item.dataset.index = String(snapshot.index);

  const header = document.createElement('div');
  header.className = 'history-line';
  const added = snapshot.delta.added.length;
  const removed = snapshot.delta.removed.length;
  header.textContent =
    `#${snapshot.index} · ${snapshot.generatedAt} · ${snapshot.agent}` +
    ` · +${added}/−${removed}` +
    (snapshot.description ? ` · ${snapshot.description}` : '');
  item.appendChild(header);

  if (snapshot.index !== latest) {
    const restore = document.createElement('button');
    restore.type = 'button';
    restore.className = 'history-restore';
    restore.textContent = `Restore #${snapshot.index}`;
    restore.addEventListener('click', () => handlers.onRestore(snapshot.index));
    item.appendChild(restore);
  }
  return item;
}

function renderDiffControls(history: HistoryResponse, handlers: HistoryHandlers): HTMLElement {
  const controls = document.createElement('div');
  controls.className = 'diff-controls';

  const makeSelect = (className: string, selected: number): HTMLSelectElement => {
    const select = document.createElement('select');
    select.className = className;
    for (const snapshot of history.snapshots) {
      const option = document.createElement('option');
      option.value = String(snapshot.index);
      option.textContent = `#${snapshot.index} (${snapshot.generatedAt})`;
      if (snapshot.index === selected) option.selected = true;
      select.appendChild(option);
    }
    return select;
  };

  const count = history.snapshots.length;
  const left = makeSelect('diff-from', Math.max(count - 1, 1));
  const right = makeSelect('diff-to', count);
  const button = document.createElement('button');
  button.type = 'button';
  button.className = 'diff-show';
  button.textContent = 'Compare';
  button.addEventListener('click', () =>
    handlers.onDiff(Number(left.value), Number(right.value)),
  );
  controls.append(left, right, button);
  return controls;
}

/** Statement-level delta view: added statements in green, removed in red. */
export function renderDiff(delta: DeltaJson): HTMLElement {
  const container = document.createElement('section');
  container.className = 'diff-view';

  const block = (title: string, className: string, lines: string[]): HTMLElement => {
    const wrap = document.createElement('div');
    wrap.className = className;
    const heading = document.createElement('h4');
    heading.textContent = `${title} (${lines.length})`;
    wrap.appendChild(heading);
    const list = document.createElement('ul');
    for (const line of lines) {
      const item = document.createElement('li');
      item.className = 'diff-statement';
      item.textContent = line;
      list.appendChild(item);
    }
    wrap.appendChild(list);
    return wrap;
  };

  container.appendChild(block('Added', 'diff-added', delta.added));
  container.appendChild(block('Removed', 'diff-removed', delta.removed));
  return container;
}

/** Restore requires explicit confirmation, then refreshes the caller. */
export async function restoreAction(
  api: ApiClient,
  entity: string,
  index: number,
  refresh: () => void | Promise<void>,
  confirmFn: (message: string) => boolean = (message) => window.confirm(message),
): Promise<boolean> {
  if (!confirmFn(`Restore this entity to snapshot #${index}? A new snapshot will be created.`)) {
    return false;
  }
  await api.restore(entity, index);
  await refresh();
  return true;
}
