// Guide overlay: one section per table column, dismissible, deep-linkable.

import { beforeEach, describe, expect, it } from 'vitest';

import { COLUMNS } from '../src/columns.js';
import { GuideOverlay } from '../src/guide.js';
import { MockApi } from './mockApi.js';

describe('guide overlay', () => {
  let api: MockApi;
  let guide: GuideOverlay;

  beforeEach(() => {
    document.body.innerHTML = '';
    api = new MockApi();
    guide = new GuideOverlay(api);
    document.body.appendChild(guide.element);
  });

  it('lists exactly one section per table column', async () => {
    await guide.open();
    expect(guide.isOpen).toBe(true);
    expect(guide.sectionIds()).toEqual(COLUMNS.map((column) => column.sectionId));
    expect(guide.sectionIds().length).toBe(14);
  });

  it('dismisses without touching the rest of the page', async () => {
    await guide.open();
    (guide.element.querySelector('.guide-dismiss') as HTMLButtonElement).click();
    expect(guide.isOpen).toBe(false);
  });

  it('deep-links to a section by fragment', async () => {
    await guide.open('privacy-parameters');
    const target = guide.element.querySelector('#guide-privacy-parameters')!;
    expect(target.classList.contains('highlighted')).toBe(true);
  });

  it('shows an error message inside the overlay when the API fails', async () => {
    api.guide = async () => {
      throw new Error('mock outage');
    };
    await guide.open();
    expect(guide.isOpen).toBe(true);
    expect(guide.element.querySelector('.guide-error')!.textContent).toContain('mock outage');
  });
});
