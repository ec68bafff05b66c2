/** Client-side persistence of the active session id. */

const KEY = "ragweld.session_id";

export function loadSessionId(storage: Storage): string | null {
  try {
    return storage.getItem(KEY);
  } catch {
    return null;
  }
}

export function storeSessionId(id: string, storage: Storage): void {
  try {
    storage.setItem(KEY, id);
  } catch {
    // storage unavailable (private mode): session lives for the page only
  }
}

export function clearSessionId(storage: Storage): void {
  try {
    storage.removeItem(KEY);
  } catch {
    // ignore
  }
}
