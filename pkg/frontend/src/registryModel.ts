import type { BehaviorRow, RegistryPayload } from "./types.js";

export interface EditableRow extends BehaviorRow {
  key: number; // stable identity for DOM rows while editing
  dirty: boolean;
}

export interface CategoryGroup {
  category_name: string;
  behaviors: BehaviorRow[];
}

/**
 * Settings-table view model. Rows mirror the server's registry order (the
 * server sorts by ascending category_code with stable insertion ties); rows
 * added or edited locally stay marked dirty until an update round-trips and
 * the table re-renders from the server's response.
 */
export class RegistryViewModel {
  rows: EditableRow[] = [];
  revision = 0;
  private nextKey = 1;

  applyServer(payload: RegistryPayload): void {
    this.revision = payload.revision;
    this.rows = payload.definitions.map((d) => ({ ...d, key: this.nextKey++, dirty: false }));
  }

  addBlankRow(): EditableRow {
    const row: EditableRow = {
      key: this.nextKey++,
      category_code: 0,
      behavior_name: "",
      category_name: "",
      dirty: true,
    };
    this.rows.push(row);
    return row;
  }

  editRow(key: number, patch: Partial<BehaviorRow>): void {
    const row = this.rows.find((r) => r.key === key);
    if (!row) {
      throw new Error(`no row with key ${key}`);
    }
    Object.assign(row, patch);
    row.dirty = true;
  }

  removeRow(key: number): void {
    this.rows = this.rows.filter((r) => r.key !== key);
  }

  get hasDirtyRows(): boolean {
    return this.rows.some((r) => r.dirty);
  }

  /** Payload for the registry update; strips the local editing state. */
  toDefinitions(): BehaviorRow[] {
    return this.rows.map(({ category_code, behavior_name, category_name }) => ({
      category_code,
      behavior_name,
      category_name,
    }));
  }

  /** First local validation problem, mirroring the server's field diagnostics. */
  firstInvalid(): { key: number; field: keyof BehaviorRow } | null {
    for (const row of this.rows) {
      if (!Number.isInteger(row.category_code) || row.category_code < 0) {
        return { key: row.key, field: "category_code" };
      }
      if (!row.behavior_name.trim()) {
        return { key: row.key, field: "behavior_name" };
      }
      if (!row.category_name.trim()) {
        return { key: row.key, field: "category_name" };
      }
    }
    return null;
  }
}

/**
 * Capture-screen grouping: categories appear in the order the registry's
 * display order first mentions them; buttons inside keep that same order.
 */
export function groupByCategory(definitions: BehaviorRow[]): CategoryGroup[] {
  const groups: CategoryGroup[] = [];
  const byName = new Map<string, CategoryGroup>();
  for (const d of definitions) {
    let group = byName.get(d.category_name);
    if (!group) {
      group = { category_name: d.category_name, behaviors: [] };
      byName.set(d.category_name, group);
      groups.push(group);
    }
    group.behaviors.push(d);
  }
  return groups;
}
