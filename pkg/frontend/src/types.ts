/** Shapes of the registry API payloads and the client interface the UI talks to. */

export interface DeploymentRow {
  id: string;
  name: string | null;
  curator: string | null;
  description: string | null;
  tier: number | null;
  flavor_label: string;
  privacy_unit: string | null;
  parameters_summary: string;
  model_label: string;
  release_type: string;
  data_source: string;
  access_type: string;
  accounting_keywords: string[];
  implementation_keywords: string[];
  has_more_info: boolean;
}

export interface ListResponse {
  total: number;
  rows: DeploymentRow[];
}

export interface Bucket {
  key: string;
  count: number;
}

export interface YearBuckets {
  year: number;
  buckets: Bucket[];
}

export interface AggregateResponse {
  variable: string;
  buckets: Bucket[];
  per_year?: YearBuckets[];
}

export interface PrivacyParameterDoc {
  symbol: string;
  other_symbol?: string;
  value: number;
  scope: string;
  notes?: string;
}

export interface CardDocument {
  id: string;
  schema_version: string;
  declared_tier: number;
  data_product: {
    name?: string;
    curator?: string;
    description?: string;
    intended_use?: string;
    publication_year?: number;
    region?: string;
    sector?: string;
  };
  flavor?: {
    name?: string;
    other_label?: string;
    data_domain?: string;
    unprotected_quantities?: string;
  };
  privacy_loss?: {
    privacy_unit?: string;
    adjacency_specification?: string;
    parameters?: PrivacyParameterDoc[];
  };
  deployment_model?: {
    model?: string;
    other_label?: string;
    trust_assumptions?: string;
    release_type?: string;
    release_details?: string;
    data_source?: string;
    access_type?: string;
    access_details?: string;
  };
  accounting?: {
    composition?: string;
    post_processing?: string;
  };
  implementation?: {
    pre_processing?: string;
    mechanisms?: string;
    justification?: string;
    code_link?: string;
  };
  more_info?: {
    sources?: string[];
    data_product_link?: string;
    notes?: string;
  };
}

export interface ValidationIssueDoc {
  rule_id: string;
  severity: string;
  field_path: string;
  message: string;
}

export interface CardResponse {
  card: CardDocument;
  inferred_tier: number | null;
  validation: {
    passed: boolean;
    issues: ValidationIssueDoc[];
    inferred_tier: number | null;
  };
}

export interface GuideSection {
  section_id: string;
  title: string;
  body: string;
}

export interface ListParams {
  q?: string;
  sort?: string;
  order?: 'asc' | 'desc';
  /** column name -> raw filter value (comma-separated for set columns) */
  filters?: Record<string, string>;
  yearFrom?: number;
  yearTo?: number;
}

export class NotFoundError extends Error {
  constructor(id: string) {
    super(`deployment not found: ${id}`);
    this.name = 'NotFoundError';
  }
}

export interface ApiClient {
  listDeployments(params: ListParams): Promise<ListResponse>;
  getDeployment(id: string): Promise<CardResponse>;
  aggregate(variable: string, yearFrom?: number, yearTo?: number): Promise<AggregateResponse>;
  aggregateByYear(variable: string): Promise<AggregateResponse>;
  guide(): Promise<GuideSection[]>;
}
