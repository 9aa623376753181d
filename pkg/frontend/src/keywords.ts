import type { Vocabulary } from './types.js';

/** Keyword selection with the macro-category closure rule: picking a term
 * immediately pulls in its macro-category, and the category chip cannot be
 * removed while any of its terms remain selected. */
export class KeywordModel {
  private termIndex = new Map<string, string>();
  private categories = new Set<string>();
  selected = new Set<string>();

  constructor(vocab: Vocabulary, initial: string[] = []) {
    for (const [category, terms] of Object.entries(vocab.categories)) {
      this.categories.add(category);
      for (const term of terms) {
        this.termIndex.set(term, category);
      }
    }
    for (const keyword of initial) {
      this.add(keyword);
    }
  }

  categoryOf(keyword: string): string | undefined {
    return this.termIndex.get(keyword);
  }

  isCategory(keyword: string): boolean {
    return this.categories.has(keyword);
  }

  add(keyword: string): void {
    const trimmed = keyword.trim();
    if (!trimmed) return;
    this.selected.add(trimmed);
    const category = this.termIndex.get(trimmed);
    if (category) {
      this.selected.add(category);
    }
  }

  /** A category is locked while any selected term belongs to it. */
  isRemovable(keyword: string): boolean {
    if (!this.categories.has(keyword)) return true;
    for (const item of this.selected) {
      if (this.termIndex.get(item) === keyword) return false;
    }
    return true;
  }

  remove(keyword: string): boolean {
    if (!this.isRemovable(keyword)) return false;
    return this.selected.delete(keyword);
  }

  chips(): { keyword: string; removable: boolean; isCategory: boolean }[] {
    return [...this.selected].sort().map((keyword) => ({
      keyword,
      removable: this.isRemovable(keyword),
      isCategory: this.categories.has(keyword),
    }));
  }

  suggestions(): string[] {
    return [...this.termIndex.keys(), ...this.categories].sort();
  }
}

export function renderKeywordPicker(
  model: KeywordModel,
  onChange: () => void = () => {},
): HTMLElement {
  const container = document.createElement('div');
  container.className = 'keyword-picker';

  const chipList = document.createElement('ul');
  chipList.className = 'keyword-chips';
  container.appendChild(chipList);

  const row = document.createElement('div');
  row.className = 'keyword-input-row';
  const input = document.createElement('input');
  input.type = 'text';
  input.className = 'keyword-input';
  input.placeholder = 'Add keyword…';
  const listId = `keyword-options-${Math.random().toString(36).slice(2, 8)}`;
  input.setAttribute('list', listId);
  const datalist = document.createElement('datalist');
  datalist.id = listId;
  for (const suggestion of model.suggestions()) {
    const option = document.createElement('option');
    option.value = suggestion;
    datalist.appendChild(option);
  }
  const addButton = document.createElement('button');
  addButton.type = 'button';
  addButton.className = 'keyword-add';
  addButton.textContent = 'Add';
  row.append(input, datalist, addButton);
  container.appendChild(row);

  const renderChips = () => {
    chipList.innerHTML = '';
    for (const chip of model.chips()) {
      const item = document.createElement('li');
      item.className = 'keyword-chip' + (chip.isCategory ? ' chip-category' : '');
      item.dataset.keyword = chip.keyword;
      const label = document.createElement('span');
      label.textContent = chip.keyword;
      item.appendChild(label);
      if (chip.removable) {
        const remove = document.createElement('button');
        remove.type = 'button';
        remove.className = 'chip-remove';
        remove.setAttribute('aria-label', `Remove ${chip.keyword}`);
        remove.textContent = '×';
        remove.addEventListener('click', () => {
          model.remove(chip.keyword);
          renderChips();
          onChange();
        });
        item.appendChild(remove);
      } else {
        item.classList.add('chip-locked');
        item.title = 'Required while one of its terms is selected';
      }
      chipList.appendChild(item);
    }
  };

  const addCurrent = () => {
    if (!input.value.trim()) return;
    model.add(input.value);
    input.value = '';
    renderChips();
    onChange();
  };
  addButton.addEventListener('click', addCurrent);
  input.addEventListener('keydown', (event) => {
    if (event.key === 'Enter') {
      event.preventDefault();
      addCurrent();
    }
  });

  renderChips();
  return container;
}
