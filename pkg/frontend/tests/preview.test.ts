import { afterEach, describe, expect, it, vi } from 'vitest'

import { ApiClient } from '../src/api'
import { PreviewLoop } from '../src/preview'
import { makeRecolor, newRecipe } from '../src/recipeModel'

function pngResponse(body: string, etag: string): Response {
  return new Response(body, {
    status: 200,
    headers: { 'Content-Type': 'image/png', ETag: etag },
  })
}

afterEach(() => {
  vi.restoreAllMocks()
})

describe('PreviewLoop', () => {
  it('fetches once for two identical consecutive previews', async () => {
    const fetchMock = vi
      .spyOn(globalThis, 'fetch')
      .mockResolvedValue(pngResponse('png-bytes', 'etag-1'))
    const loop = new PreviewLoop(new ApiClient(''))
    const recipe = newRecipe('tee', [makeRecolor('body', '#000000', false)])

    const first = await loop.render('tee', recipe)
    const second = await loop.render('tee', { ...recipe, created_at: 'later' })
    expect(first.fetched).toBe(true)
    expect(second.fetched).toBe(false)
    expect(second.etag).toBe('etag-1')
    expect(fetchMock).toHaveBeenCalledTimes(1)
  })

  it('refetches when the ops change', async () => {
    const fetchMock = vi
      .spyOn(globalThis, 'fetch')
      .mockImplementation(async () => pngResponse('png', 'etag'))
    const loop = new PreviewLoop(new ApiClient(''))
    await loop.render('tee', newRecipe('tee', [makeRecolor('body', '#000000', false)]))
    await loop.render('tee', newRecipe('tee', [makeRecolor('body', '#FFFFFF', false)]))
    expect(fetchMock).toHaveBeenCalledTimes(2)
  })

  it('aborts the stale request when a newer preview starts (latest wins)', async () => {
    const seenSignals: AbortSignal[] = []
    vi.spyOn(globalThis, 'fetch').mockImplementation((_url, init) => {
      const signal = init?.signal as AbortSignal
      seenSignals.push(signal)
      return new Promise<Response>((resolve, reject) => {
        signal.addEventListener('abort', () =>
          reject(new DOMException('aborted', 'AbortError')),
        )
        // only the second request ever resolves
        if (seenSignals.length === 2) {
          setTimeout(() => resolve(pngResponse('latest', 'etag-2')), 0)
        }
      })
    })
    const loop = new PreviewLoop(new ApiClient(''))
    const stale = loop.render(
      'tee',
      newRecipe('tee', [makeRecolor('body', '#000001', false)]),
    )
    const fresh = loop.render(
      'tee',
      newRecipe('tee', [makeRecolor('body', '#000002', false)]),
    )
    await expect(stale).rejects.toHaveProperty('name', 'AbortError')
    const result = await fresh
    expect(result.fetched).toBe(true)
    expect(seenSignals[0].aborted).toBe(true)
    expect(seenSignals[1].aborted).toBe(false)
  })

  it('surfaces machine-readable server error codes', async () => {
    vi.spyOn(globalThis, 'fetch').mockResolvedValue(
      new Response(JSON.stringify({ code: 'unknown_part', message: 'no part' }), {
        status: 400,
        headers: { 'Content-Type': 'application/json' },
      }),
    )
    const loop = new PreviewLoop(new ApiClient(''))
    await expect(
      loop.render('tee', newRecipe('tee', [makeRecolor('ghost', '#000000', false)])),
    ).rejects.toMatchObject({ status: 400, code: 'unknown_part' })
  })
})
