// Card rendering: sections appear only when the card discloses them.

import { beforeEach, describe, expect, it } from 'vitest';

import { CardPanel } from '../src/cardPanel.js';
import { MockApi } from './mockApi.js';

function sectionTitles(): string[] {
  return [...document.querySelectorAll('.card-section h3')].map((el) => el.textContent ?? '');
}

describe('card panel', () => {
  let api: MockApi;
  let panel: CardPanel;

  beforeEach(() => {
    document.body.innerHTML = '';
    api = new MockApi();
    panel = new CardPanel(api);
    document.body.appendChild(panel.element);
  });

  it('renders only Data product and More info for a tier-1 card', async () => {
    await panel.select('delta-basic');
    expect(sectionTitles()).toEqual(['Data product', 'More info']);
  });

  it('renders all seven sections for a tier-3 card', async () => {
    await panel.select('alpha-product');
    expect(sectionTitles()).toEqual([
      'Data product',
      'Flavor',
      'Privacy loss',
      'Deployment model',
      'Accounting',
      'Implementation',
      'More info',
    ]);
  });

  it('shows the tier badge with the disclosure tooltip', async () => {
    await panel.select('alpha-product');
    const badge = document.querySelector('.deployment-card .tier-badge') as HTMLElement;
    expect(badge.textContent).toBe('Tier 3');
    expect(badge.title).toContain('not quality');
  });

  it('tabs between selected cards', async () => {
    await panel.select('alpha-product');
    await panel.select('delta-basic');
    expect(document.querySelector('.deployment-card')!.getAttribute('data-id')).toBe('delta-basic');
    panel.activate('alpha-product');
    expect(document.querySelector('.deployment-card')!.getAttribute('data-id')).toBe('alpha-product');
  });

  it('renders privacy parameters with greek symbols', async () => {
    await panel.select('beta-census');
    const text = document.querySelector('.card-section[data-section="privacy-loss"]')!.textContent!;
    expect(text).toContain('ε = 1 (total)');
  });
});
