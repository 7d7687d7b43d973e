/** Guide overlay: one explanatory section per table column, dismissible and
 * deep-linkable by #fragment. */

import { ApiClient, GuideSection } from './types.js';

export class GuideOverlay {
  readonly element: HTMLElement;
  private readonly api: ApiClient;
  private listElement: HTMLElement;

  constructor(api: ApiClient) {
    this.api = api;
    this.element = document.createElement('div');
    this.element.className = 'guide-overlay';
    this.element.hidden = true;

    const modal = document.createElement('div');
    modal.className = 'guide-modal';
    modal.setAttribute('role', 'dialog');
    modal.setAttribute('aria-label', 'Registry guide');

    const header = document.createElement('div');
    header.className = 'guide-header';
    const title = document.createElement('h2');
    title.textContent = 'Guide';
    header.appendChild(title);
    const dismiss = document.createElement('button');
    dismiss.type = 'button';
    dismiss.className = 'guide-dismiss';
    dismiss.textContent = 'Close';
    dismiss.addEventListener('click', () => this.close());
    header.appendChild(dismiss);
    modal.appendChild(header);

    this.listElement = document.createElement('div');
    this.listElement.className = 'guide-sections';
    modal.appendChild(this.listElement);
    this.element.appendChild(modal);
  }

  get isOpen(): boolean {
    return !this.element.hidden;
  }

  async open(fragment?: string): Promise<void> {
    this.element.hidden = false;
    this.listElement.textContent = '';
    let sections: GuideSection[];
    try {
      sections = await this.api.guide();
    } catch (error) {
      const failure = document.createElement('p');
      failure.className = 'guide-error';
      failure.textContent = `Could not load the guide: ${String(error)}`;
      this.listElement.appendChild(failure);
      return;
    }
    for (const section of sections) {
      const block = document.createElement('section');
      block.className = 'guide-section';
      block.id = `guide-${section.section_id}`;
      block.dataset.sectionId = section.section_id;
      const heading = document.createElement('h3');
      heading.textContent = section.title;
      block.appendChild(heading);
      const body = document.createElement('p');
      body.textContent = section.body;
      block.appendChild(body);
      this.listElement.appendChild(block);
    }
    if (fragment) {
      const safe = fragment.replace(/[^a-z0-9-]/g, '');
      const target = safe ? this.listElement.querySelector(`#guide-${safe}`) : null;
      (target as HTMLElement | null)?.scrollIntoView?.();
      target?.classList.add('highlighted');
    }
  }

  close(): void {
    this.element.hidden = true;
  }

  sectionIds(): string[] {
    return Array.from(this.listElement.querySelectorAll('.guide-section')).map(
      (el) => (el as HTMLElement).dataset.sectionId ?? '',
    );
  }
}
