/** Interactive deployments table: sortable, filterable columns plus a global
 * search box. All rows come from the API; the table never filters or counts
 * client-side. */

import { COLUMNS, ColumnSpec } from './columns.js';
import { LatestRequestGate } from './state.js';
import { ApiClient, DeploymentRow, ListParams } from './types.js';

export interface TableCallbacks {
  onRowClick(id: string): void;
}

export class DeploymentTable {
  readonly element: HTMLElement;
  private readonly api: ApiClient;
  private readonly callbacks: TableCallbacks;
  private readonly gate = new LatestRequestGate();

  private search = '';
  private sort: { column: string; order: 'asc' | 'desc' } | null = null;
  private filters: Record<string, string> = {};

  private banner: HTMLElement;
  private body: HTMLTableSectionElement;
  private totalLabel: HTMLElement;
  private cachedRows: DeploymentRow[] = [];

  constructor(api: ApiClient, callbacks: TableCallbacks) {
    this.api = api;
    this.callbacks = callbacks;
    this.element = document.createElement('section');
    this.element.className = 'table-panel';

    const controls = document.createElement('div');
    controls.className = 'table-controls';
    const searchBox = document.createElement('input');
    searchBox.type = 'search';
    searchBox.placeholder = 'Search all columns and cards';
    searchBox.className = 'global-search';
    searchBox.addEventListener('input', () => {
      this.search = searchBox.value;
      void this.refresh();
    });
    controls.appendChild(searchBox);
    this.totalLabel = document.createElement('span');
    this.totalLabel.className = 'total-label';
    controls.appendChild(this.totalLabel);
    this.element.appendChild(controls);

    this.banner = document.createElement('div');
    this.banner.className = 'error-banner';
    this.banner.hidden = true;
    this.element.appendChild(this.banner);

    const table = document.createElement('table');
    table.className = 'deployments';
    table.appendChild(this.buildHeader());
    this.body = document.createElement('tbody');
    table.appendChild(this.body);
    this.element.appendChild(table);
  }

  private buildHeader(): HTMLTableSectionElement {
    const head = document.createElement('thead');
    const labelRow = document.createElement('tr');
    const filterRow = document.createElement('tr');
    filterRow.className = 'filter-row';
    for (const column of COLUMNS) {
      const th = document.createElement('th');
      th.dataset.column = column.queryName;
      const button = document.createElement('button');
      button.type = 'button';
      button.className = 'sort-toggle';
      button.textContent = column.label;
      button.addEventListener('click', () => this.toggleSort(column));
      th.appendChild(button);
      labelRow.appendChild(th);

      const filterCell = document.createElement('th');
      const input = document.createElement('input');
      input.type = 'text';
      input.className = 'column-filter';
      input.dataset.column = column.queryName;
      input.placeholder = 'filter';
      input.addEventListener('change', () => {
        this.filters[column.queryName] = input.value.trim();
        void this.refresh();
      });
      filterCell.appendChild(input);
      filterRow.appendChild(filterCell);
    }
    head.appendChild(labelRow);
    head.appendChild(filterRow);
    return head;
  }

  private toggleSort(column: ColumnSpec): void {
    if (this.sort && this.sort.column === column.queryName) {
      this.sort = {
        column: column.queryName,
        order: this.sort.order === 'asc' ? 'desc' : 'asc',
      };
    } else {
      this.sort = { column: column.queryName, order: 'asc' };
    }
    void this.refresh();
  }

  get sortState(): { column: string; order: 'asc' | 'desc' } | null {
    return this.sort;
  }

  get rows(): readonly DeploymentRow[] {
    return this.cachedRows;
  }

  async refresh(): Promise<void> {
    const token = this.gate.begin();
    const params: ListParams = {};
    if (this.search.trim() !== '') params.q = this.search;
    if (this.sort) {
      params.sort = this.sort.column;
      params.order = this.sort.order;
    }
    const filters: Record<string, string> = {};
    for (const [column, value] of Object.entries(this.filters)) {
      if (value !== '') filters[column] = value;
    }
    if (Object.keys(filters).length > 0) params.filters = filters;

    try {
      const response = await this.api.listDeployments(params);
      if (!this.gate.isCurrent(token)) return; // a newer request wins
      this.banner.hidden = true;
      this.cachedRows = response.rows;
      this.totalLabel.textContent = `${response.total} deployments`;
      this.renderRows(response.rows);
    } catch (error) {
      if (!this.gate.isCurrent(token)) return;
      // keep the cached rows interactive; just surface the failure
      this.banner.textContent = `Could not refresh the table: ${String(error)}`;
      this.banner.hidden = false;
    }
  }

  private renderRows(rows: DeploymentRow[]): void {
    this.body.textContent = '';
    for (const row of rows) {
      const tr = document.createElement('tr');
      tr.dataset.id = row.id;
      tr.className = 'deployment-row';
      tr.addEventListener('click', () => this.callbacks.onRowClick(row.id));
      for (const column of COLUMNS) {
        tr.appendChild(this.renderCell(row, column));
      }
      this.body.appendChild(tr);
    }
  }

  private renderCell(row: DeploymentRow, column: ColumnSpec): HTMLTableCellElement {
    const td = document.createElement('td');
    td.dataset.column = column.queryName;
    const value = row[column.key];
    switch (column.kind) {
      case 'tier': {
        const badge = document.createElement('span');
        badge.className = 'tier-badge';
        badge.textContent = value === null ? '-' : String(value);
        badge.title = 'Transparency tier: measures disclosure, not quality';
        td.appendChild(badge);
        break;
      }
      case 'keywords': {
        for (const keyword of value as string[]) {
          const chip = document.createElement('span');
          chip.className = 'keyword-chip';
          chip.textContent = keyword;
          td.appendChild(chip);
        }
        break;
      }
      case 'check': {
        td.textContent = value ? '✓' : '';
        break;
      }
      default:
        td.textContent = value === null || value === undefined ? '' : String(value);
    }
    return td;
  }
}
