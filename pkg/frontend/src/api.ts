// Typed client for the uvforge /v1 API. All requests go through here so
// the rest of the editor never builds JSON by hand.

import type { Recipe } from './recipeModel'

export interface GarmentSummary {
  garment_id: string
  name: string
  parts: string[]
  width: number
  height: number
}

export interface PartInfo {
  name: string
  color: string
  pixel_count: number
}

export interface GenRequestBody {
  prompt: string
  style: 'cartoon' | 'aesthetic' | 'scenic' | 'none'
  width: number
  height: number
  seed: number
}

export interface GenResponse {
  image_b64: string
  request_digest: string
}

export interface OutfitSummary {
  outfit_id: string
  garment_id: string
  title: string
  saved_at: string
  texture_digest: string
}

export interface Outfit extends OutfitSummary {
  recipe: Recipe
}

export interface PngResponse {
  blob: Blob
  etag: string | null
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message)
  }
}

async function raiseApiError(res: Response): Promise<never> {
  let code = 'unknown'
  let message = `HTTP ${res.status}`
  try {
    const body = await res.json()
    if (typeof body.code === 'string') code = body.code
    if (typeof body.message === 'string') message = body.message
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ApiError(res.status, code, message)
}

export class ApiClient {
  constructor(private baseUrl: string = '') {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`
  }

  private async getJson<T>(path: string): Promise<T> {
    const res = await fetch(this.url(path))
    if (!res.ok) await raiseApiError(res)
    return res.json() as Promise<T>
  }

  async listGarments(): Promise<GarmentSummary[]> {
    return this.getJson('/v1/garments')
  }

  async listParts(garmentId: string): Promise<PartInfo[]> {
    return this.getJson(`/v1/garments/${encodeURIComponent(garmentId)}/parts`)
  }

  async fetchPartLookup(garmentId: string): Promise<PngResponse> {
    const res = await fetch(
      this.url(`/v1/garments/${encodeURIComponent(garmentId)}/part-lookup`),
    )
    if (!res.ok) await raiseApiError(res)
    return { blob: await res.blob(), etag: res.headers.get('etag') }
  }

  async generate(body: GenRequestBody): Promise<GenResponse> {
    const res = await fetch(this.url('/v1/generate'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    })
    if (!res.ok) await raiseApiError(res)
    return res.json()
  }

  async preview(
    garmentId: string,
    recipe: Recipe,
    signal?: AbortSignal,
  ): Promise<PngResponse> {
    const res = await fetch(
      this.url(`/v1/garments/${encodeURIComponent(garmentId)}/preview`),
      {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(recipe),
        signal,
      },
    )
    if (!res.ok) await raiseApiError(res)
    return { blob: await res.blob(), etag: res.headers.get('etag') }
  }

  async saveOutfit(recipe: Recipe, title: string): Promise<Outfit> {
    const res = await fetch(this.url('/v1/wardrobe'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ recipe, title }),
    })
    if (!res.ok) await raiseApiError(res)
    return res.json()
  }

  async listOutfits(): Promise<OutfitSummary[]> {
    return this.getJson('/v1/wardrobe')
  }

  async loadOutfit(outfitId: string): Promise<Outfit> {
    return this.getJson(`/v1/wardrobe/${encodeURIComponent(outfitId)}`)
  }

  async deleteOutfit(outfitId: string): Promise<void> {
    const res = await fetch(
      this.url(`/v1/wardrobe/${encodeURIComponent(outfitId)}`),
      { method: 'DELETE' },
    )
    if (res.status !== 204) await raiseApiError(res)
  }
}
