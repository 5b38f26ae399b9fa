// The preview loop: every recipe change posts to /preview and swaps the
// displayed texture. At most one request is in flight (latest wins, stale
// requests aborted); identical consecutive recipes are served from the
// last response instead of refetching; the ETag guards against swapping
// in a byte-identical image.

import type { ApiClient, PngResponse } from './api'
import type { Recipe } from './recipeModel'
import { recipeFingerprint } from './recipeModel'

export interface PreviewResult {
  blob: Blob
  etag: string | null
  fetched: boolean // false when the identical recipe was already displayed
}

export class PreviewLoop {
  private inFlight: AbortController | null = null
  private lastFingerprint: string | null = null
  private lastResponse: PngResponse | null = null
  fetchCount = 0

  constructor(private api: ApiClient) {}

  reset() {
    this.inFlight?.abort()
    this.inFlight = null
    this.lastFingerprint = null
    this.lastResponse = null
  }

  async render(garmentId: string, recipe: Recipe): Promise<PreviewResult> {
    const fingerprint = recipeFingerprint(recipe)
    if (this.lastFingerprint === fingerprint && this.lastResponse) {
      return { ...this.lastResponse, fetched: false }
    }

    this.inFlight?.abort()
    const controller = new AbortController()
    this.inFlight = controller

    this.fetchCount += 1
    const response = await this.api.preview(garmentId, recipe, controller.signal)
    if (controller.signal.aborted) {
      throw new DOMException('superseded by a newer preview', 'AbortError')
    }
    this.inFlight = null
    this.lastFingerprint = fingerprint
    this.lastResponse = response
    return { ...response, fetched: true }
  }
}
