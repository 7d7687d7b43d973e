/** fetch-based client for the registry HTTP API. */

import {
  AggregateResponse,
  ApiClient,
  CardResponse,
  GuideSection,
  ListParams,
  ListResponse,
  NotFoundError,
} from './types.js';

export class HttpApiClient implements ApiClient {
  constructor(private readonly baseUrl: string = '') {}

  private async getJson<T>(path: string, params?: URLSearchParams): Promise<T> {
    const query = params && [...params.keys()].length > 0 ? `?${params.toString()}` : '';
    const response = await fetch(`${this.baseUrl}${path}${query}`);
    if (response.status === 404) {
      throw new NotFoundError(path);
    }
    if (!response.ok) {
      throw new Error(`request failed: ${response.status} ${path}`);
    }
    return (await response.json()) as T;
  }

  listDeployments(params: ListParams): Promise<ListResponse> {
    const search = new URLSearchParams();
    if (params.q) search.set('q', params.q);
    if (params.sort) {
      search.set('sort', params.sort);
      search.set('order', params.order ?? 'asc');
    }
    for (const [column, value] of Object.entries(params.filters ?? {})) {
      if (value !== '') search.set(`filter.${column}`, value);
    }
    if (params.yearFrom !== undefined) search.set('year_from', String(params.yearFrom));
    if (params.yearTo !== undefined) search.set('year_to', String(params.yearTo));
    return this.getJson<ListResponse>('/api/deployments', search);
  }

  getDeployment(id: string): Promise<CardResponse> {
    return this.getJson<CardResponse>(`/api/deployments/${encodeURIComponent(id)}`);
  }

  aggregate(variable: string, yearFrom?: number, yearTo?: number): Promise<AggregateResponse> {
    const search = new URLSearchParams({ variable });
    if (yearFrom !== undefined) search.set('year_from', String(yearFrom));
    if (yearTo !== undefined) search.set('year_to', String(yearTo));
    return this.getJson<AggregateResponse>('/api/aggregate', search);
  }

  aggregateByYear(variable: string): Promise<AggregateResponse> {
    return this.getJson<AggregateResponse>('/api/aggregate/by-year', new URLSearchParams({ variable }));
  }

  guide(): Promise<GuideSection[]> {
    return this.getJson<GuideSection[]>('/api/guide');
  }
}
