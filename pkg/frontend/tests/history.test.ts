import { describe, expect, it, vi } from 'vitest';
import { ApiClient } from '../src/api.js';
import { renderDiff, renderHistory, restoreAction } from '../src/history.js';
import type { DeltaJson, HistoryResponse } from '../src/types.js';
import historyJson from './fixtures/martis-history.json';
import diffJson from './fixtures/martis-diff.json';

const history = historyJson as HistoryResponse;
const diff = diffJson as DeltaJson;

describe('renderHistory', () => {
  it('lists the editing-scenario snapshots newest first', () => {
    const element = renderHistory(history, { onDiff: () => {}, onRestore: () => {} });
    const indexes = [...element.querySelectorAll<HTMLElement>('.history-item')].map(
      (item) => Number(item.dataset.index),
    );
    expect(indexes).toEqual([2, 1]);
    const first = element.querySelector('.history-item')!;
    expect(first.textContent).toContain(history.snapshots[1]!.generatedAt);
    expect(first.textContent).toContain(history.snapshots[1]!.agent);
  });

  it('offers restore only for non-latest snapshots', () => {
    const restored: number[] = [];
    const element = renderHistory(history, {
      onDiff: () => {},
      onRestore: (n) => restored.push(n),
    });
    const buttons = [...element.querySelectorAll<HTMLButtonElement>('.history-restore')];
    expect(buttons).toHaveLength(1);
    buttons[0]!.click();
    expect(restored).toEqual([1]);
  });

  it('wires the diff selector to the chosen pair', () => {
    const pairs: [number, number][] = [];
    const element = renderHistory(history, {
      onDiff: (i, j) => pairs.push([i, j]),
      onRestore: () => {},
    });
    element.querySelector<HTMLButtonElement>('.diff-show')!.click();
    expect(pairs).toEqual([[1, 2]]);
  });
});

describe('renderDiff', () => {
  it('shows exactly the delta returned by the API, statement-level', () => {
    const element = renderDiff(diff);
    const added = [...element.querySelectorAll('.diff-added .diff-statement')].map(
      (li) => li.textContent,
    );
    const removed = [...element.querySelectorAll('.diff-removed .diff-statement')].map(
      (li) => li.textContent,
    );
    expect(added).toEqual(diff.added);
    expect(removed).toEqual(diff.removed);
    expect(added.some((line) => line!.includes('elegy'))).toBe(true);
    expect(removed.some((line) => line!.includes('abstract'))).toBe(true);
  });
});

describe('restoreAction', () => {
  function clientWithFetch(calls: string[]): ApiClient {
    return new ApiClient(async (url, init) => {
      calls.push(`${init?.method ?? 'GET'} ${url}`);
      return new Response(JSON.stringify({ iri: 'x', snapshot: {} }), { status: 200 });
    });
  }

  it('asks for confirmation before restoring', async () => {
    const calls: string[] = [];
    const refresh = vi.fn();
    const declined = await restoreAction(
      clientWithFetch(calls),
      'https://db.example.org/journal-article/1',
      1,
      refresh,
      () => false,
    );
    expect(declined).toBe(false);
    expect(calls).toEqual([]);
    expect(refresh).not.toHaveBeenCalled();
  });

  it('restores and refreshes after confirmation', async () => {
    const calls: string[] = [];
    const refresh = vi.fn();
    const confirmed = await restoreAction(
      clientWithFetch(calls),
      'https://db.example.org/journal-article/1',
      1,
      refresh,
      () => true,
    );
    expect(confirmed).toBe(true);
    expect(calls).toEqual([
      'POST /api/entities/https://db.example.org/journal-article/1/restore/1',
    ]);
    expect(refresh).toHaveBeenCalledOnce();
  });
});
