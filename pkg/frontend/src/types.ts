// JSON shapes exchanged with the curation API.

export interface IriTerm {
  type: 'iri';
  value: string;
}

export interface LiteralTerm {
  type: 'literal';
  value: string;
  datatype?: string;
  lang?: string;
}

export interface BlankTerm {
  type: 'bnode';
  value: string;
}

export type TermJson = IriTerm | LiteralTerm | BlankTerm;

export interface NodeValue {
  type: 'node';
  id?: string;
  nodeType?: string;
  fields: FieldsJson;
}

export type ValueJson = TermJson | NodeValue;

export type FieldsJson = Record<string, ValueJson[]>;

export interface EntityDocument {
  iri: string | null;
  type: string | null;
  fields: FieldsJson;
  keywords: string[];
}

export type FieldKind =
  | 'text'
  | 'typed-literal'
  | 'dropdown'
  | 'entity-reference'
  | 'nested-form';

export interface FormFieldDef {
  predicate: string;
  label: string;
  kind: FieldKind | string;
  required: boolean;
  repeatable: boolean;
  options?: TermJson[];
  datatype?: string;
  referencedClass?: string;
  nestedShape?: string;
}

export type FormSchema = Record<string, FormFieldDef[]>;

export interface DeltaJson {
  added: string[];
  removed: string[];
}

export interface SnapshotJson {
  entity: string;
  index: number;
  generatedAt: string;
  invalidatedAt: string | null;
  agent: string;
  description: string | null;
  primarySource: TermJson | null;
  delta: DeltaJson;
}

export interface HistoryResponse {
  entity: string;
  tombstoned: boolean;
  snapshots: SnapshotJson[];
}

export interface SearchHit {
  iri: string;
  type: string | null;
  label: string;
}

export interface ValidationResultJson {
  focusNode: TermJson;
  path: string;
  component: string;
  offendingValue: TermJson | null;
  message: string;
}

export interface ValidationReportJson {
  conforms: boolean;
  results: ValidationResultJson[];
}

export interface ProblemJson {
  code: string;
  message: string;
  validation?: ValidationReportJson;
  violations?: string[];
  keywords?: string[];
}

export interface Vocabulary {
  categories: Record<string, string[]>;
}

export interface WriteResponse {
  iri: string;
  snapshot: SnapshotJson;
}

export const PRISM_KEYWORD = 'http://prismstandard.org/namespaces/basic/2.0/keyword';

export function localName(iri: string): string {
  const hash = iri.lastIndexOf('#');
  if (hash >= 0) return iri.slice(hash + 1);
  const trimmed = iri.endsWith('/') ? iri.slice(0, -1) : iri;
  return trimmed.slice(trimmed.lastIndexOf('/') + 1);
}
