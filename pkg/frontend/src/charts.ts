/** Trend visualizations: a bucket bar chart linked to a stacked per-year chart
 * whose x-axis can be brushed to a year range. Both charts render exactly what
 * the API returned; no counts are computed client-side. */

import { LatestRequestGate } from './state.js';
import { AggregateResponse, ApiClient, Bucket } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

const CHART_WIDTH = 420;
const CHART_HEIGHT = 220;
const AXIS_HEIGHT = 24;
const PALETTE = [
  '#4c78a8', '#f58518', '#54a24b', '#e45756', '#72b7b2',
  '#eeca3b', '#b279a2', '#9d755d', '#bab0ac', '#637939',
];

export const AGGREGATE_VARIABLES = [
  'tier', 'flavor', 'deployment_model', 'region',
  'sector', 'release_type', 'data_source', 'access_type',
];

export class BarChart {
  readonly element: SVGSVGElement;

  constructor() {
    this.element = document.createElementNS(SVG_NS, 'svg');
    this.element.setAttribute('viewBox', `0 0 ${CHART_WIDTH} ${CHART_HEIGHT}`);
    this.element.setAttribute('class', 'bar-chart');
  }

  render(buckets: Bucket[]): void {
    this.element.textContent = '';
    const max = buckets.reduce((m, b) => Math.max(m, b.count), 0);
    const band = buckets.length > 0 ? CHART_WIDTH / buckets.length : CHART_WIDTH;
    buckets.forEach((bucket, i) => {
      const plotHeight = CHART_HEIGHT - AXIS_HEIGHT;
      const height = max > 0 ? (bucket.count / max) * plotHeight : 0;
      const rect = document.createElementNS(SVG_NS, 'rect');
      rect.setAttribute('class', 'bar');
      rect.dataset.key = bucket.key;
      rect.dataset.count = String(bucket.count);
      rect.setAttribute('x', String(i * band + 4));
      rect.setAttribute('y', String(plotHeight - height));
      rect.setAttribute('width', String(Math.max(band - 8, 1)));
      rect.setAttribute('height', String(height));
      rect.setAttribute('fill', PALETTE[i % PALETTE.length]);
      this.element.appendChild(rect);
      const label = document.createElementNS(SVG_NS, 'text');
      label.setAttribute('class', 'bar-label');
      label.setAttribute('x', String(i * band + band / 2));
      label.setAttribute('y', String(CHART_HEIGHT - 6));
      label.setAttribute('text-anchor', 'middle');
      label.textContent = bucket.key;
      this.element.appendChild(label);
    });
  }

  /** (key, count) pairs currently drawn, in draw order. */
  renderedData(): Bucket[] {
    return Array.from(this.element.querySelectorAll('rect.bar')).map((rect) => ({
      key: (rect as SVGRectElement).dataset.key ?? '',
      count: Number((rect as SVGRectElement).dataset.count ?? '0'),
    }));
  }
}

export class StackedBarChart {
  readonly element: SVGSVGElement;
  onBrush: ((range: [number, number] | null) => void) | null = null;
  private years: number[] = [];
  private dragStart: number | null = null;

  constructor() {
    this.element = document.createElementNS(SVG_NS, 'svg');
    this.element.setAttribute('viewBox', `0 0 ${CHART_WIDTH} ${CHART_HEIGHT}`);
    this.element.setAttribute('class', 'stacked-chart');
  }

  render(response: AggregateResponse): void {
    this.element.textContent = '';
    const perYear = response.per_year ?? [];
    this.years = perYear.map((entry) => entry.year);
    const keys = Array.from(
      new Set(perYear.flatMap((entry) => entry.buckets.map((b) => b.key))),
    ).sort();
    const colorOf = new Map(keys.map((key, i) => [key, PALETTE[i % PALETTE.length]]));
    const maxTotal = perYear.reduce(
      (m, entry) => Math.max(m, entry.buckets.reduce((s, b) => s + b.count, 0)),
      0,
    );
    const band = perYear.length > 0 ? CHART_WIDTH / perYear.length : CHART_WIDTH;
    const plotHeight = CHART_HEIGHT - AXIS_HEIGHT;

    perYear.forEach((entry, i) => {
      let yOffset = 0;
      for (const bucket of [...entry.buckets].sort((a, b) => a.key.localeCompare(b.key))) {
        const height = maxTotal > 0 ? (bucket.count / maxTotal) * plotHeight : 0;
        const rect = document.createElementNS(SVG_NS, 'rect');
        rect.setAttribute('class', 'stack-segment');
        rect.dataset.year = String(entry.year);
        rect.dataset.key = bucket.key;
        rect.dataset.count = String(bucket.count);
        rect.setAttribute('x', String(i * band + 4));
        rect.setAttribute('y', String(plotHeight - yOffset - height));
        rect.setAttribute('width', String(Math.max(band - 8, 1)));
        rect.setAttribute('height', String(height));
        rect.setAttribute('fill', colorOf.get(bucket.key) ?? '#999');
        this.element.appendChild(rect);
        yOffset += height;
      }
      const label = document.createElementNS(SVG_NS, 'text');
      label.setAttribute('class', 'year-label');
      label.dataset.year = String(entry.year);
      label.setAttribute('x', String(i * band + band / 2));
      label.setAttribute('y', String(CHART_HEIGHT - 6));
      label.setAttribute('text-anchor', 'middle');
      label.textContent = String(entry.year);
      label.addEventListener('mousedown', () => {
        this.dragStart = entry.year;
      });
      label.addEventListener('mouseup', () => {
        if (this.dragStart !== null) {
          this.brushYears(this.dragStart, entry.year);
          this.dragStart = null;
        }
      });
      this.element.appendChild(label);
    });
  }

  /** Brush a year span on the x-axis (inclusive, in either direction). */
  brushYears(from: number, to: number): void {
    const range: [number, number] = from <= to ? [from, to] : [to, from];
    this.highlight(range);
    this.onBrush?.(range);
  }

  clearBrush(): void {
    this.highlight(null);
    this.onBrush?.(null);
  }

  private highlight(range: [number, number] | null): void {
    for (const label of this.element.querySelectorAll('text.year-label')) {
      const year = Number((label as SVGTextElement).dataset.year);
      const inRange = range !== null && year >= range[0] && year <= range[1];
      label.setAttribute('class', inRange ? 'year-label brushed' : 'year-label');
    }
  }
}

export class TrendsPanel {
  readonly element: HTMLElement;
  readonly leftChart = new BarChart();
  readonly rightChart = new StackedBarChart();
  variable = 'flavor';
  yearBrush: [number, number] | null = null;
  private readonly api: ApiClient;
  private readonly leftGate = new LatestRequestGate();
  private readonly rightGate = new LatestRequestGate();
  private bodyElement: HTMLElement;

  constructor(api: ApiClient) {
    this.api = api;
    this.element = document.createElement('section');
    this.element.className = 'trends-panel';

    const toggle = document.createElement('button');
    toggle.type = 'button';
    toggle.className = 'trends-toggle';
    toggle.textContent = 'Visualize trends in deployments';
    toggle.addEventListener('click', () => {
      this.bodyElement.hidden = !this.bodyElement.hidden;
      if (!this.bodyElement.hidden) void this.refresh();
    });
    this.element.appendChild(toggle);

    this.bodyElement = document.createElement('div');
    this.bodyElement.className = 'trends-body';
    this.bodyElement.hidden = true; // collapsed until requested

    const controls = document.createElement('div');
    controls.className = 'trends-controls';
    const picker = document.createElement('select');
    picker.className = 'variable-picker';
    for (const name of AGGREGATE_VARIABLES) {
      const option = document.createElement('option');
      option.value = name;
      option.textContent = name.replace(/_/g, ' ');
      picker.appendChild(option);
    }
    picker.value = this.variable;
    picker.addEventListener('change', () => {
      this.variable = picker.value;
      this.yearBrush = null;
      void this.refresh();
    });
    controls.appendChild(picker);
    const clear = document.createElement('button');
    clear.type = 'button';
    clear.className = 'clear-brush';
    clear.textContent = 'Clear year brush';
    clear.addEventListener('click', () => this.rightChart.clearBrush());
    controls.appendChild(clear);
    this.bodyElement.appendChild(controls);

    const charts = document.createElement('div');
    charts.className = 'charts';
    charts.appendChild(this.leftChart.element);
    charts.appendChild(this.rightChart.element);
    this.bodyElement.appendChild(charts);
    this.element.appendChild(this.bodyElement);

    this.rightChart.onBrush = (range) => {
      void this.brushYears(range);
    };
  }

  get expanded(): boolean {
    return !this.bodyElement.hidden;
  }

  async refresh(): Promise<void> {
    await Promise.all([this.refreshLeft(), this.refreshRight()]);
  }

  /** Left chart refetches for the brushed window; the stacked chart always
   * shows the full per-year breakdown. */
  async brushYears(range: [number, number] | null): Promise<void> {
    this.yearBrush = range;
    await this.refreshLeft();
  }

  private async refreshLeft(): Promise<void> {
    const token = this.leftGate.begin();
    const [from, to] = this.yearBrush ?? [undefined, undefined];
    const response = await this.api.aggregate(this.variable, from, to);
    if (!this.leftGate.isCurrent(token)) return;
    this.leftChart.render(response.buckets);
  }

  private async refreshRight(): Promise<void> {
    const token = this.rightGate.begin();
    const response = await this.api.aggregateByYear(this.variable);
    if (!this.rightGate.isCurrent(token)) return;
    this.rightChart.render(response);
  }
}
