/** Wires the table, card panel, trend charts, and guide into one page. */

import { CardPanel } from './cardPanel.js';
import { TrendsPanel } from './charts.js';
import { GuideOverlay } from './guide.js';
import { DeploymentTable } from './table.js';
import { ApiClient } from './types.js';

export class App {
  readonly table: DeploymentTable;
  readonly cardPanel: CardPanel;
  readonly trends: TrendsPanel;
  readonly guide: GuideOverlay;

  constructor(private readonly root: HTMLElement, api: ApiClient) {
    this.cardPanel = new CardPanel(api);
    this.table = new DeploymentTable(api, {
      onRowClick: (id) => void this.selectDeployment(id),
    });
    this.trends = new TrendsPanel(api);
    this.guide = new GuideOverlay(api);

    const header = document.createElement('header');
    header.className = 'app-header';
    const title = document.createElement('h1');
    title.textContent = 'Differential privacy deployment registry';
    header.appendChild(title);
    const guideButton = document.createElement('button');
    guideButton.type = 'button';
    guideButton.className = 'guide-button';
    guideButton.textContent = 'Guide';
    guideButton.addEventListener('click', () => void this.openGuide());
    header.appendChild(guideButton);

    const main = document.createElement('main');
    main.className = 'layout';
    const left = document.createElement('div');
    left.className = 'layout-main';
    left.appendChild(this.trends.element);
    left.appendChild(this.table.element);
    main.appendChild(left);
    main.appendChild(this.cardPanel.element);

    root.appendChild(header);
    root.appendChild(main);
    root.appendChild(this.guide.element);
  }

  async init(): Promise<void> {
    await this.table.refresh();
  }

  async selectDeployment(id: string): Promise<void> {
    await this.cardPanel.select(id);
  }

  deselectDeployment(id: string): void {
    this.cardPanel.deselect(id);
  }

  async openGuide(fragment?: string): Promise<void> {
    const fromHash = window.location.hash.replace(/^#/, '');
    await this.guide.open(fragment ?? (fromHash || undefined));
  }
}
