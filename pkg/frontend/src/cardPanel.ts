/** Tabbed deployment-card panel: up to three cards open at once, sections
 * rendered only when the card discloses them. */

import { MAX_SELECTIONS, SelectionState } from './state.js';
import { ApiClient, CardDocument, CardResponse, NotFoundError } from './types.js';

const GREEK: Record<string, string> = {
  epsilon: 'ε',
  delta: 'δ',
  rho: 'ρ',
  alpha: 'α',
};

export class CardPanel {
  readonly element: HTMLElement;
  readonly selection = new SelectionState();
  private readonly api: ApiClient;
  private readonly cards = new Map<string, CardResponse>();
  private tabBar: HTMLElement;
  private content: HTMLElement;
  private noticeArea: HTMLElement;

  constructor(api: ApiClient) {
    this.api = api;
    this.element = document.createElement('aside');
    this.element.className = 'card-panel';
    this.noticeArea = document.createElement('div');
    this.noticeArea.className = 'notices';
    this.element.appendChild(this.noticeArea);
    this.tabBar = document.createElement('div');
    this.tabBar.className = 'tab-bar';
    this.element.appendChild(this.tabBar);
    this.content = document.createElement('div');
    this.content.className = 'card-content';
    this.element.appendChild(this.content);
    this.render();
  }

  async select(id: string): Promise<void> {
    if (this.selection.isSelected(id)) {
      this.selection.setActive(id);
      this.render();
      return;
    }
    if (this.selection.selectedIds.length >= MAX_SELECTIONS) {
      this.notice(`Maximum of three selections; deselect one to compare ${id}.`);
      return;
    }
    let response: CardResponse;
    try {
      response = await this.api.getDeployment(id);
    } catch (error) {
      if (error instanceof NotFoundError) {
        this.toast(`Deployment ${id} was not found.`);
        return; // selection unchanged
      }
      this.toast(`Could not load ${id}: ${String(error)}`);
      return;
    }
    if (this.selection.select(id) !== 'rejected') {
      this.cards.set(id, response);
    }
    this.render();
  }

  deselect(id: string): void {
    if (this.selection.deselect(id)) {
      this.cards.delete(id);
      this.render();
    }
  }

  activate(id: string): void {
    this.selection.setActive(id);
    this.render();
  }

  private notice(message: string): void {
    const div = document.createElement('div');
    div.className = 'notice';
    div.setAttribute('role', 'status');
    div.textContent = message;
    this.noticeArea.appendChild(div);
  }

  private toast(message: string): void {
    const div = document.createElement('div');
    div.className = 'toast';
    div.setAttribute('role', 'alert');
    div.textContent = message;
    this.noticeArea.appendChild(div);
  }

  private render(): void {
    this.tabBar.textContent = '';
    for (const id of this.selection.selectedIds) {
      const tab = document.createElement('span');
      tab.className = id === this.selection.activeId ? 'tab active' : 'tab';
      tab.dataset.id = id;
      const label = document.createElement('button');
      label.type = 'button';
      label.className = 'tab-label';
      label.textContent = this.cards.get(id)?.card.data_product.name ?? id;
      label.addEventListener('click', () => this.activate(id));
      tab.appendChild(label);
      const close = document.createElement('button');
      close.type = 'button';
      close.className = 'tab-close';
      close.textContent = '×';
      close.setAttribute('aria-label', `Deselect ${id}`);
      close.addEventListener('click', () => this.deselect(id));
      tab.appendChild(close);
      this.tabBar.appendChild(tab);
    }

    this.content.textContent = '';
    const activeId = this.selection.activeId;
    if (activeId === null) {
      const empty = document.createElement('p');
      empty.className = 'empty-hint';
      empty.textContent = 'Select up to three deployments in the table to read and compare their cards.';
      this.content.appendChild(empty);
      return;
    }
    const response = this.cards.get(activeId);
    if (response) this.content.appendChild(renderCard(response));
  }
}

function field(label: string, value: string | number | undefined | null): HTMLElement | null {
  if (value === undefined || value === null || value === '') return null;
  const row = document.createElement('div');
  row.className = 'field';
  const dt = document.createElement('span');
  dt.className = 'field-label';
  dt.textContent = label;
  const dd = document.createElement('span');
  dd.className = 'field-value';
  dd.textContent = String(value);
  row.append(dt, dd);
  return row;
}

function section(title: string, children: (HTMLElement | null)[]): HTMLElement | null {
  const present = children.filter((c): c is HTMLElement => c !== null);
  if (present.length === 0) return null;
  const wrapper = document.createElement('section');
  wrapper.className = 'card-section';
  wrapper.dataset.section = title.toLowerCase().replace(/[^a-z]+/g, '-');
  const heading = document.createElement('h3');
  heading.textContent = title;
  wrapper.appendChild(heading);
  for (const child of present) wrapper.appendChild(child);
  return wrapper;
}

export function renderCard(response: CardResponse): HTMLElement {
  const card: CardDocument = response.card;
  const root = document.createElement('article');
  root.className = 'deployment-card';
  root.dataset.id = card.id;

  const header = document.createElement('header');
  const title = document.createElement('h2');
  title.textContent = card.data_product.name ?? card.id;
  header.appendChild(title);
  const badge = document.createElement('span');
  badge.className = 'tier-badge';
  badge.textContent = `Tier ${response.inferred_tier ?? '-'}`;
  badge.title = 'Transparency tier: measures disclosure, not quality';
  header.appendChild(badge);
  root.appendChild(header);

  const sections: (HTMLElement | null)[] = [];
  sections.push(
    section('Data product', [
      field('Name', card.data_product.name),
      field('Curator', card.data_product.curator),
      field('Description', card.data_product.description),
      field('Intended use', card.data_product.intended_use),
      field('Publication year', card.data_product.publication_year),
      field('Region', card.data_product.region),
      field('Sector', card.data_product.sector),
    ]),
  );
  if (card.flavor) {
    sections.push(
      section('Flavor', [
        field('Flavor', card.flavor.name),
        field('Label', card.flavor.other_label),
        field('Data domain', card.flavor.data_domain),
        field('Unprotected quantities', card.flavor.unprotected_quantities),
      ]),
    );
  }
  if (card.privacy_loss) {
    const parameters = (card.privacy_loss.parameters ?? []).map((p) => {
      const symbol = p.symbol === 'other' && p.other_symbol ? p.other_symbol : GREEK[p.symbol] ?? p.symbol;
      const notes = p.notes ? ` — ${p.notes}` : '';
      return field('Parameter', `${symbol} = ${p.value} (${p.scope})${notes}`);
    });
    sections.push(
      section('Privacy loss', [
        field('Privacy unit', card.privacy_loss.privacy_unit),
        field('Adjacency', card.privacy_loss.adjacency_specification),
        ...parameters,
      ]),
    );
  }
  if (card.deployment_model) {
    sections.push(
      section('Deployment model', [
        field('Model', card.deployment_model.model),
        field('Label', card.deployment_model.other_label),
        field('Trust assumptions', card.deployment_model.trust_assumptions),
        field('Release type', card.deployment_model.release_type),
        field('Release details', card.deployment_model.release_details),
        field('Data source', card.deployment_model.data_source),
        field('Access type', card.deployment_model.access_type),
        field('Access details', card.deployment_model.access_details),
      ]),
    );
  }
  if (card.accounting) {
    sections.push(
      section('Accounting', [
        field('Composition', card.accounting.composition),
        field('Post-processing', card.accounting.post_processing),
      ]),
    );
  }
  if (card.implementation) {
    sections.push(
      section('Implementation', [
        field('Pre-processing', card.implementation.pre_processing),
        field('Mechanisms', card.implementation.mechanisms),
        field('Justification', card.implementation.justification),
        field('Code', card.implementation.code_link),
      ]),
    );
  }
  if (card.more_info) {
    const sources = (card.more_info.sources ?? []).map((url) => {
      const row = document.createElement('div');
      row.className = 'field';
      const link = document.createElement('a');
      link.href = url;
      link.textContent = url;
      link.rel = 'noopener';
      link.target = '_blank';
      row.appendChild(link);
      return row;
    });
    sections.push(
      section('More info', [
        ...sources,
        field('Data product', card.more_info.data_product_link),
        field('Notes', card.more_info.notes),
      ]),
    );
  }
  for (const s of sections) {
    if (s !== null) root.appendChild(s);
  }
  return root;
}
