/** The table's column set: the displayable row fields, in display order.
 * section_id keys the matching guide section. */

import { DeploymentRow } from './types.js';

export type ColumnKind = 'text' | 'tier' | 'enum' | 'keywords' | 'check';

export interface ColumnSpec {
  key: keyof DeploymentRow;
  label: string;
  sectionId: string;
  kind: ColumnKind;
  /** query column name used for sort/filter params */
  queryName: string;
}

export const COLUMNS: ColumnSpec[] = [
  { key: 'name', label: 'Name', sectionId: 'name', kind: 'text', queryName: 'name' },
  { key: 'curator', label: 'Curator', sectionId: 'curator', kind: 'text', queryName: 'curator' },
  { key: 'description', label: 'Description', sectionId: 'description', kind: 'text', queryName: 'description' },
  { key: 'tier', label: 'Tier', sectionId: 'tier', kind: 'tier', queryName: 'tier' },
  { key: 'flavor_label', label: 'Flavor', sectionId: 'flavor', kind: 'enum', queryName: 'flavor_label' },
  { key: 'privacy_unit', label: 'Privacy unit', sectionId: 'privacy-unit', kind: 'text', queryName: 'privacy_unit' },
  { key: 'parameters_summary', label: 'Privacy parameters', sectionId: 'privacy-parameters', kind: 'text', queryName: 'parameters_summary' },
  { key: 'model_label', label: 'Deployment model', sectionId: 'deployment-model', kind: 'enum', queryName: 'model_label' },
  { key: 'release_type', label: 'Release type', sectionId: 'release-type', kind: 'enum', queryName: 'release_type' },
  { key: 'data_source', label: 'Data source', sectionId: 'data-source', kind: 'enum', queryName: 'data_source' },
  { key: 'access_type', label: 'Access type', sectionId: 'access-type', kind: 'enum', queryName: 'access_type' },
  { key: 'accounting_keywords', label: 'Accounting', sectionId: 'accounting', kind: 'keywords', queryName: 'accounting_keywords' },
  { key: 'implementation_keywords', label: 'Implementation', sectionId: 'implementation', kind: 'keywords', queryName: 'implementation_keywords' },
  { key: 'has_more_info', label: 'More info', sectionId: 'more-info', kind: 'check', queryName: 'has_more_info' },
];
