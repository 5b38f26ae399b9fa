// Editor state: selected garment/part, the working op list, wardrobe cache.
// A tiny observable store; every mutation goes through a method so the
// invariants hold (ops stay schema-valid, selection changes reset drafts).

import type { GarmentSummary, OutfitSummary, PartInfo } from './api'
import type { EditOp, Recipe } from './recipeModel'
import { newRecipe } from './recipeModel'

export interface EditorSnapshot {
  garment: GarmentSummary | null
  parts: PartInfo[]
  selectedPart: string | null
  ops: EditOp[]
  outfits: OutfitSummary[]
  openedOutfitId: string | null
}

type Listener = (state: EditorSnapshot) => void

export class EditorState {
  private garment: GarmentSummary | null = null
  private parts: PartInfo[] = []
  private selectedPart: string | null = null
  private ops: EditOp[] = []
  private outfits: OutfitSummary[] = []
  private openedOutfitId: string | null = null
  private listeners = new Set<Listener>()

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener)
    return () => this.listeners.delete(listener)
  }

  private emit() {
    const snap = this.snapshot()
    for (const listener of this.listeners) listener(snap)
  }

  snapshot(): EditorSnapshot {
    return {
      garment: this.garment,
      parts: [...this.parts],
      selectedPart: this.selectedPart,
      ops: [...this.ops],
      outfits: [...this.outfits],
      openedOutfitId: this.openedOutfitId,
    }
  }

  setGarment(garment: GarmentSummary, parts: PartInfo[]) {
    this.garment = garment
    this.parts = parts
    this.selectedPart = null
    this.ops = []
    this.openedOutfitId = null
    this.emit()
  }

  // Clicking BACKGROUND (null) leaves the selection unchanged.
  selectPart(part: string | null) {
    if (part === null) return
    if (!this.parts.some((p) => p.name === part)) {
      throw new Error(`unknown part ${part}`)
    }
    if (part !== this.selectedPart) {
      this.selectedPart = part
      this.emit()
    }
  }

  appendOp(op: EditOp) {
    this.ops = [...this.ops, op]
    this.emit()
  }

  removeOp(index: number) {
    if (index < 0 || index >= this.ops.length) return
    this.ops = this.ops.filter((_, i) => i !== index)
    this.emit()
  }

  moveOp(index: number, delta: -1 | 1) {
    const target = index + delta
    if (index < 0 || index >= this.ops.length) return
    if (target < 0 || target >= this.ops.length) return
    const next = [...this.ops]
    ;[next[index], next[target]] = [next[target], next[index]]
    this.ops = next
    this.emit()
  }

  clearOps() {
    this.ops = []
    this.openedOutfitId = null
    this.emit()
  }

  loadRecipe(ops: EditOp[], outfitId: string | null) {
    this.ops = [...ops]
    this.openedOutfitId = outfitId
    this.emit()
  }

  setOutfits(outfits: OutfitSummary[]) {
    this.outfits = [...outfits]
    this.emit()
  }

  // The working recipe is always derivable from state; created_at is
  // stamped fresh because the recipe is the reproducible artifact, not
  // the timestamp.
  currentRecipe(): Recipe {
    if (!this.garment) throw new Error('no garment selected')
    return newRecipe(this.garment.garment_id, [...this.ops])
  }
}
