import { defineConfig } from 'vitest/config'

export default defineConfig({
  server: {
    port: 5173,
    proxy: {
      '/v1': 'http://127.0.0.1:8000',
    },
  },
  build: {
    outDir: 'dist',
  },
  test: {
    environment: 'happy-dom',
    testTimeout: 30000,
    hookTimeout: 60000,
  },
})
