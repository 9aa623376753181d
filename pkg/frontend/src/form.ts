import { KeywordModel, renderKeywordPicker } from './keywords.js';
import type {
  EntityDocument,
  FieldsJson,
  FormFieldDef,
  FormSchema,
  NodeValue,
  SearchHit,
  TermJson,
  ValidationReportJson,
  ValueJson,
  Vocabulary,
} from './types.js';
import { PRISM_KEYWORD, localName } from './types.js';

const XSD_STRING = 'http://www.w3.org/2001/XMLSchema#string';

// Attribute-selector escaping (CSS.escape is unavailable in some DOM
// implementations; predicates only need quotes and backslashes handled).
function attrEscape(value: string): string {
  return value.replace(/\\/g, '\\\\').replace(/"/g, '\\"');
}

export interface FormContext {
  schema: FormSchema;
  vocabulary: Vocabulary;
  searchEntities: (referencedClass: string | undefined, q: string) => Promise<SearchHit[]>;
  onChange?: () => void;
}

interface FieldState {
  def: FormFieldDef;
  element: HTMLElement;
}

function termLabel(term: TermJson): string {
  return term.type === 'iri' ? localName(term.value) : term.value;
}

function optionValue(term: TermJson): string {
  return term.value;
}

// -- widgets -----------------------------------------------------------------

function textWidget(def: FormFieldDef, value?: ValueJson): HTMLElement {
  const input = document.createElement('input');
  input.type = 'text';
  input.className = 'widget-text';
  if (value && value.type === 'literal') input.value = value.value;
  return input;
}

function typedWidget(def: FormFieldDef, value?: ValueJson): HTMLElement {
  const wrap = document.createElement('span');
  wrap.className = 'widget-typed';
  const input = document.createElement('input');
  input.type = 'text';
  if (value && value.type === 'literal') input.value = value.value;
  const hint = document.createElement('span');
  hint.className = 'datatype-hint';
  hint.textContent = def.datatype ? localName(def.datatype) : '';
  wrap.append(input, hint);
  return wrap;
}

function dropdownWidget(def: FormFieldDef, value?: ValueJson): HTMLElement {
  const select = document.createElement('select');
  select.className = 'widget-dropdown';
  if (!def.required) {
    const blank = document.createElement('option');
    blank.value = '';
    blank.textContent = '—';
    select.appendChild(blank);
  }
  for (const option of def.options ?? []) {
    const element = document.createElement('option');
    element.value = optionValue(option);
    element.textContent = termLabel(option);
    element.dataset.termType = option.type;
    if (option.type === 'literal' && option.datatype) {
      element.dataset.datatype = option.datatype;
    }
    select.appendChild(element);
  }
  if (value && value.type !== 'node') {
    select.value = value.value;
  }
  return select;
}

function referenceWidget(
  def: FormFieldDef,
  ctx: FormContext,
  value?: ValueJson,
): HTMLElement {
  const wrap = document.createElement('div');
  wrap.className = 'widget-reference';

  const current = document.createElement('input');
  current.type = 'text';
  current.className = 'reference-value';
  current.placeholder = 'IRI of the referenced entity';
  if (value && value.type === 'iri') current.value = value.value;

  const search = document.createElement('input');
  search.type = 'search';
  search.className = 'reference-search';
  search.placeholder = 'Search…';

  const button = document.createElement('button');
  button.type = 'button';
  button.className = 'reference-search-go';
  button.textContent = 'Find';

  const results = document.createElement('ul');
  results.className = 'picker-results';

  button.addEventListener('click', () => {
    void ctx.searchEntities(def.referencedClass, search.value).then((hits) => {
      results.innerHTML = '';
      for (const hit of hits) {
        const item = document.createElement('li');
        const pick = document.createElement('button');
        pick.type = 'button';
        pick.textContent = `${hit.label} — ${hit.iri}`;
        pick.addEventListener('click', () => {
          current.value = hit.iri;
          results.innerHTML = '';
          ctx.onChange?.();
        });
        item.appendChild(pick);
        results.appendChild(item);
      }
      if (hits.length === 0) {
        const item = document.createElement('li');
        item.className = 'picker-empty';
        item.textContent = 'No matches';
        results.appendChild(item);
      }
    });
  });

  wrap.append(current, search, button, results);
  return wrap;
}

function nestedWidget(def: FormFieldDef, ctx: FormContext, value?: ValueJson): HTMLElement {
  const fieldset = document.createElement('fieldset');
  fieldset.className = 'widget-nested';
  const legend = document.createElement('legend');
  legend.textContent = def.label;
  fieldset.appendChild(legend);

  const node = value && value.type === 'node' ? value : undefined;
  if (node?.id) fieldset.dataset.nodeId = node.id;
  const nodeType = node?.nodeType ?? def.nestedShape;
  if (nodeType) fieldset.dataset.nodeType = nodeType;

  const nestedDefs = def.nestedShape ? ctx.schema[def.nestedShape] : undefined;
  if (!nestedDefs) {
    const note = document.createElement('div');
    note.className = 'nested-unresolved';
    note.textContent = `No form definition for ${def.nestedShape ?? 'this node'}`;
    fieldset.appendChild(note);
    if (node) {
      preserveRaw(fieldset, node);
    }
    return fieldset;
  }

  for (const nestedDef of nestedDefs) {
    fieldset.appendChild(renderField(nestedDef, ctx, node?.fields[nestedDef.predicate] ?? []));
  }
  return fieldset;
}

function preserveRaw(container: HTMLElement, value: ValueJson): void {
  const raw = document.createElement('input');
  raw.type = 'hidden';
  raw.className = 'raw-value';
  raw.value = JSON.stringify(value);
  container.appendChild(raw);
}

function unsupportedWidget(def: FormFieldDef, value?: ValueJson): HTMLElement {
  const wrap = document.createElement('div');
  wrap.className = 'unsupported-field';
  wrap.textContent = `Unsupported field kind "${def.kind}" — value preserved as-is`;
  if (value !== undefined) {
    preserveRaw(wrap, value);
  }
  return wrap;
}

function widgetFor(def: FormFieldDef, ctx: FormContext, value?: ValueJson): HTMLElement {
  switch (def.kind) {
    case 'text':
      return textWidget(def, value);
    case 'typed-literal':
      return typedWidget(def, value);
    case 'dropdown':
      return dropdownWidget(def, value);
    case 'entity-reference':
      return referenceWidget(def, ctx, value);
    case 'nested-form':
      return nestedWidget(def, ctx, value);
    default:
      return unsupportedWidget(def, value);
  }
}

// -- field rows ----------------------------------------------------------------

function renderField(def: FormFieldDef, ctx: FormContext, values: ValueJson[]): HTMLElement {
  const field = document.createElement('div');
  field.className = 'form-field';
  field.dataset.predicate = def.predicate;
  field.dataset.kind = def.kind;
  if (def.datatype) field.dataset.datatype = def.datatype;

  const label = document.createElement('label');
  label.className = 'field-label';
  label.textContent = def.label + (def.required ? ' *' : '');
  if (def.required) field.classList.add('field-required');
  field.appendChild(label);

  const rows = document.createElement('div');
  rows.className = 'field-rows';
  field.appendChild(rows);

  const addRow = (value?: ValueJson) => {
    const row = document.createElement('div');
    row.className = 'field-row';
    row.appendChild(widgetFor(def, ctx, value));
    if (def.repeatable) {
      const remove = document.createElement('button');
      remove.type = 'button';
      remove.className = 'row-remove';
      remove.textContent = 'Remove';
      remove.addEventListener('click', () => {
        row.remove();
        ctx.onChange?.();
      });
      row.appendChild(remove);
    }
    rows.appendChild(row);
  };

  // Nested sub-forms are only materialized on demand: an untouched empty
  // sub-form would otherwise collect as a phantom node (dropdowns with a
  // single required option select themselves).
  if (values.length === 0 && def.kind !== 'nested-form') {
    addRow();
  } else {
    for (const value of values) addRow(value);
  }

  if (def.repeatable || def.kind === 'nested-form') {
    const add = document.createElement('button');
    add.type = 'button';
    add.className = 'row-add';
    add.textContent = `Add ${def.label}`;
    add.addEventListener('click', () => {
      addRow();
      ctx.onChange?.();
    });
    field.appendChild(add);
  }

  const messages = document.createElement('ul');
  messages.className = 'field-messages';
  field.appendChild(messages);
  return field;
}

// -- public surface ---------------------------------------------------------

/** Pure rendering: the returned form is a function of (schema, document). */
export function renderForm(
  classIri: string,
  doc: EntityDocument,
  ctx: FormContext,
): HTMLFormElement {
  const form = document.createElement('form');
  form.className = 'entity-form';
  form.dataset.classIri = classIri;
  if (doc.iri) form.dataset.entityIri = doc.iri;

  const defs = ctx.schema[classIri] ?? [];
  for (const def of defs) {
    if (def.predicate === PRISM_KEYWORD) {
      const field = document.createElement('div');
      field.className = 'form-field keyword-field';
      field.dataset.predicate = def.predicate;
      const label = document.createElement('label');
      label.className = 'field-label';
      label.textContent = def.label;
      field.appendChild(label);
      const model = new KeywordModel(ctx.vocabulary, doc.keywords);
      const picker = renderKeywordPicker(model, ctx.onChange);
      (field as HTMLElement & { keywordModel?: KeywordModel }).keywordModel = model;
      field.appendChild(picker);
      const messages = document.createElement('ul');
      messages.className = 'field-messages';
      field.appendChild(messages);
      form.appendChild(field);
      continue;
    }
    form.appendChild(renderField(def, ctx, doc.fields[def.predicate] ?? []));
  }
  return form;
}

function collectWidget(def: FormFieldDef, row: Element): ValueJson | null {
  const raw = row.querySelector<HTMLInputElement>('.raw-value');
  if (raw) {
    return JSON.parse(raw.value) as ValueJson;
  }
  switch (def.kind) {
    case 'text': {
      const input = row.querySelector<HTMLInputElement>('.widget-text');
      if (!input || input.value === '') return null;
      return { type: 'literal', value: input.value };
    }
    case 'typed-literal': {
      const input = row.querySelector<HTMLInputElement>('.widget-typed input');
      if (!input || input.value === '') return null;
      const literal: TermJson = { type: 'literal', value: input.value };
      if (def.datatype && def.datatype !== XSD_STRING) literal.datatype = def.datatype;
      return literal;
    }
    case 'dropdown': {
      const select = row.querySelector<HTMLSelectElement>('.widget-dropdown');
      if (!select || select.value === '') return null;
      const option = select.selectedOptions[0];
      if (option?.dataset.termType === 'literal') {
        const literal: TermJson = { type: 'literal', value: select.value };
        if (option.dataset.datatype) literal.datatype = option.dataset.datatype;
        return literal;
      }
      return { type: 'iri', value: select.value };
    }
    case 'entity-reference': {
      const input = row.querySelector<HTMLInputElement>('.reference-value');
      if (!input || input.value === '') return null;
      return { type: 'iri', value: input.value };
    }
    case 'nested-form': {
      const fieldset = row.querySelector<HTMLElement>('.widget-nested');
      if (!fieldset) return null;
      return collectNestedFields(fieldset);
    }
    default:
      return null;
  }
}

function collectNestedFields(fieldset: HTMLElement): NodeValue | null {
  const node: NodeValue = { type: 'node', fields: {} };
  if (fieldset.dataset.nodeId) node.id = fieldset.dataset.nodeId;
  if (fieldset.dataset.nodeType) node.nodeType = fieldset.dataset.nodeType;

  let any = false;
  for (const child of Array.from(fieldset.children)) {
    if (!(child instanceof HTMLElement) || !child.classList.contains('form-field')) continue;
    const innerDef: FormFieldDef = {
      predicate: child.dataset.predicate!,
      label: '',
      kind: child.dataset.kind as FormFieldDef['kind'],
      required: false,
      repeatable: true,
      datatype: datatypeOf(child),
    };
    const values = collectFieldValues(innerDef, child);
    if (values.length > 0) {
      node.fields[innerDef.predicate] = values;
      any = true;
    }
  }
  if (!any && !node.id) return null;
  return node;
}

function datatypeOf(field: HTMLElement): string | undefined {
  return field.dataset.datatype || undefined;
}

function collectFieldValues(def: FormFieldDef, field: Element): ValueJson[] {
  const values: ValueJson[] = [];
  const rows = field.querySelectorAll(':scope > .field-rows > .field-row');
  for (const row of rows) {
    const value = collectWidget(def, row);
    if (value !== null) values.push(value);
  }
  return values;
}

export function collectDocument(form: HTMLFormElement, schema: FormSchema): EntityDocument {
  const classIri = form.dataset.classIri!;
  const defs = schema[classIri] ?? [];
  const doc: EntityDocument = {
    iri: form.dataset.entityIri ?? null,
    type: classIri,
    fields: {},
    keywords: [],
  };
  for (const def of defs) {
    const field = form.querySelector<HTMLElement>(
      `:scope > .form-field[data-predicate="${attrEscape(def.predicate)}"]`,
    );
    if (!field) continue;
    if (def.predicate === PRISM_KEYWORD) {
      const model = (field as HTMLElement & { keywordModel?: KeywordModel }).keywordModel;
      doc.keywords = model ? [...model.selected].sort() : [];
      continue;
    }
    const values = collectFieldValues({ ...def, datatype: def.datatype }, field);
    if (values.length > 0) {
      doc.fields[def.predicate] = values;
    }
  }
  return doc;
}

function canonical(value: unknown): string {
  return JSON.stringify(sortKeys(value));
}

function sortKeys(value: unknown): unknown {
  if (Array.isArray(value)) {
    const mapped = value.map(sortKeys);
    return mapped.sort((a, b) => (JSON.stringify(a) < JSON.stringify(b) ? -1 : 1));
  }
  if (value && typeof value === 'object') {
    return Object.fromEntries(
      Object.entries(value as Record<string, unknown>)
        .sort(([a], [b]) => (a < b ? -1 : 1))
        .map(([k, v]) => [k, sortKeys(v)]),
    );
  }
  return value;
}

/** True when the collected document differs from the one the form was
 * rendered with; unchanged forms must not issue a write. */
export function isDirty(original: EntityDocument, collected: EntityDocument): boolean {
  const strip = (doc: EntityDocument) => ({
    type: doc.type,
    fields: doc.fields,
    keywords: [...doc.keywords].sort(),
  });
  return canonical(strip(original)) !== canonical(strip(collected));
}

/** Show 422 validation messages inline next to the offending fields. */
export function applyValidationReport(form: HTMLFormElement, report: ValidationReportJson): void {
  for (const list of form.querySelectorAll('.field-messages')) {
    list.innerHTML = '';
  }
  form.querySelectorAll('.field-invalid').forEach((el) => el.classList.remove('field-invalid'));
  for (const result of report.results) {
    const fields = form.querySelectorAll<HTMLElement>(
      `.form-field[data-predicate="${attrEscape(result.path)}"]`,
    );
    const target = fields[0];
    if (!target) continue;
    target.classList.add('field-invalid');
    const list = target.querySelector('.field-messages');
    if (list) {
      const item = document.createElement('li');
      item.className = 'validation-message';
      item.textContent = `${result.component}: ${result.message}`;
      list.appendChild(item);
    }
  }
}
