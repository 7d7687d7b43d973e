// Table behavior: rows come from the API verbatim; controls re-query instead
// of filtering client-side; failures keep cached rows.

import { beforeEach, describe, expect, it } from 'vitest';

import { COLUMNS } from '../src/columns.js';
import { DeploymentTable } from '../src/table.js';
import { ListResponse } from '../src/types.js';
import { MockApi, flush } from './mockApi.js';

describe('deployments table', () => {
  let api: MockApi;
  let table: DeploymentTable;
  let clicked: string[];

  beforeEach(async () => {
    document.body.innerHTML = '';
    api = new MockApi();
    clicked = [];
    table = new DeploymentTable(api, { onRowClick: (id) => clicked.push(id) });
    document.body.appendChild(table.element);
    await table.refresh();
  });

  it('renders every API row with all fourteen columns', () => {
    const rows = document.querySelectorAll('tbody tr');
    expect(rows.length).toBe(api.deployments.length);
    expect(rows[0].querySelectorAll('td').length).toBe(COLUMNS.length);
    expect(document.querySelector('.total-label')!.textContent).toContain(
      String(api.deployments.length),
    );
  });

  it('renders keyword chips and the more-info check mark', () => {
    const alpha = document.querySelector('tr[data-id="alpha-product"]')!;
    const chips = alpha.querySelectorAll('td[data-column="accounting_keywords"] .keyword-chip');
    expect([...chips].map((c) => c.textContent)).toEqual(['composition', 'post-processing']);
    expect(alpha.querySelector('td[data-column="has_more_info"]')!.textContent).toBe('✓');
  });

  it('global search issues a q request and narrows to the response', async () => {
    const box = document.querySelector('.global-search') as HTMLInputElement;
    box.value = 'census';
    box.dispatchEvent(new Event('input'));
    await flush();

    const logged = api.lastRequest('listDeployments')!;
    expect(logged.params.q).toBe('census');
    const rendered = [...document.querySelectorAll('tbody tr')].map(
      (tr) => (tr as HTMLElement).dataset.id,
    );
    expect(rendered).toEqual((logged.response as ListResponse).rows.map((r) => r.id));
  });

  it('clicking a sort header twice reverses the order', async () => {
    const nameHeader = document.querySelector(
      'th[data-column="name"] .sort-toggle',
    ) as HTMLButtonElement;
    nameHeader.click();
    await flush();
    expect(api.lastRequest('listDeployments')!.params.sort).toBe('name');
    expect(api.lastRequest('listDeployments')!.params.order).toBe('asc');
    const ascending = [...document.querySelectorAll('tbody tr')].map(
      (tr) => (tr as HTMLElement).dataset.id,
    );

    nameHeader.click();
    await flush();
    expect(api.lastRequest('listDeployments')!.params.order).toBe('desc');
    const descending = [...document.querySelectorAll('tbody tr')].map(
      (tr) => (tr as HTMLElement).dataset.id,
    );
    expect(descending).toEqual([...ascending].reverse());
  });

  it('column filters are sent as filter params', async () => {
    const filter = document.querySelector(
      'input.column-filter[data-column="flavor_label"]',
    ) as HTMLInputElement;
    filter.value = 'pure';
    filter.dispatchEvent(new Event('change'));
    await flush();
    expect(api.lastRequest('listDeployments')!.params.filters).toEqual({ flavor_label: 'pure' });
  });

  it('keeps cached rows and shows a banner when the API fails', async () => {
    const before = document.querySelectorAll('tbody tr').length;
    expect(before).toBeGreaterThan(0);

    api.failNextList = true;
    const box = document.querySelector('.global-search') as HTMLInputElement;
    box.value = 'anything';
    box.dispatchEvent(new Event('input'));
    await flush();

    const banner = document.querySelector('.error-banner') as HTMLElement;
    expect(banner.hidden).toBe(false);
    expect(document.querySelectorAll('tbody tr').length).toBe(before);
  });

  it('row clicks surface the deployment id', () => {
    (document.querySelector('tr[data-id="beta-census"]') as HTMLElement).click();
    expect(clicked).toEqual(['beta-census']);
  });

  it('out-of-order responses never overwrite the latest request', async () => {
    // delay the first response beyond the second
    const original = api.listDeployments.bind(api);
    let release!: () => void;
    const gate = new Promise<void>((resolve) => (release = resolve));
    let call = 0;
    api.listDeployments = async (params) => {
      call += 1;
      if (call === 1) {
        await gate;
      }
      return original(params);
    };

    const box = document.querySelector('.global-search') as HTMLInputElement;
    box.value = 'alpha';
    box.dispatchEvent(new Event('input'));
    box.value = 'census';
    box.dispatchEvent(new Event('input'));
    await flush();
    release();
    await flush();

    const rendered = [...document.querySelectorAll('tbody tr')].map(
      (tr) => (tr as HTMLElement).dataset.id,
    );
    expect(rendered).toEqual(['beta-census']);
  });
});
