// The floor grid: a pure cell model derived 1:1 from the floor payload,
// plus a DOM renderer.

import type { Floor } from "./types.js";

export interface Cell {
  x: number;
  y: number;
  objectId: string | null;
  objectType: string | null;
}

/** Row-major cells; exactly width x height, mirroring the payload. */
export function gridCells(floor: Floor): Cell[] {
  const byPosition = new Map<string, { id: string; type: string }>();
  for (const obj of floor.objects) {
    byPosition.set(`${obj.x},${obj.y}`, { id: obj.id, type: obj.type });
  }
  const cells: Cell[] = [];
  for (let y = 0; y < floor.height; y++) {
    for (let x = 0; x < floor.width; x++) {
      const hit = byPosition.get(`${x},${y}`);
      cells.push({
        x,
        y,
        objectId: hit ? hit.id : null,
        objectType: hit ? hit.type : null,
      });
    }
  }
  return cells;
}

export function shortLabel(id: string): string {
  const digits = id.replace(/[^0-9]/g, "");
  return `${id[0].toUpperCase()}${digits}`;
}

export function renderGrid(container: HTMLElement, floor: Floor | null): void {
  container.textContent = "";
  if (!floor) return;
  container.style.gridTemplateColumns = `repeat(${floor.width}, 1fr)`;
  for (const cell of gridCells(floor)) {
    const div = container.ownerDocument.createElement("div");
    div.className = cell.objectId ? `cell occupied type-${cell.objectType}` : "cell";
    div.dataset["x"] = String(cell.x);
    div.dataset["y"] = String(cell.y);
    if (cell.objectId) {
      div.textContent = shortLabel(cell.objectId);
      div.title = `${cell.objectId} at (${cell.x}, ${cell.y})`;
      div.dataset["objectId"] = cell.objectId;
    }
    container.appendChild(div);
  }
}
