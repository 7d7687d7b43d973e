/** Client-side state: tabbed selection (capped at three) and the viz panel. */

export const MAX_SELECTIONS = 3;

export type SelectResult = 'added' | 'activated' | 'rejected';

export class SelectionState {
  private ids: string[] = [];
  private activeIndex = -1;

  get selectedIds(): readonly string[] {
    return this.ids;
  }

  get activeId(): string | null {
    return this.activeIndex >= 0 ? this.ids[this.activeIndex] : null;
  }

  isSelected(id: string): boolean {
    return this.ids.includes(id);
  }

  /** Select a deployment; an existing id becomes the active tab, a fourth new
   * id is rejected outright (the cap is a hard invariant). */
  select(id: string): SelectResult {
    const existing = this.ids.indexOf(id);
    if (existing >= 0) {
      this.activeIndex = existing;
      return 'activated';
    }
    if (this.ids.length >= MAX_SELECTIONS) {
      return 'rejected';
    }
    this.ids.push(id);
    this.activeIndex = this.ids.length - 1;
    return 'added';
  }

  deselect(id: string): boolean {
    const index = this.ids.indexOf(id);
    if (index < 0) return false;
    this.ids.splice(index, 1);
    if (this.ids.length === 0) {
      this.activeIndex = -1;
    } else if (this.activeIndex >= this.ids.length) {
      this.activeIndex = this.ids.length - 1;
    } else if (this.activeIndex > index) {
      this.activeIndex -= 1;
    }
    return true;
  }

  setActive(id: string): void {
    const index = this.ids.indexOf(id);
    if (index >= 0) this.activeIndex = index;
  }
}

export interface VizState {
  variable: string;
  yearBrush: [number, number] | null;
}

/** Monotonic token gate so only the most recently issued request renders. */
export class LatestRequestGate {
  private sequence = 0;

  begin(): number {
    return ++this.sequence;
  }

  isCurrent(token: number): boolean {
    return token === this.sequence;
  }
}
